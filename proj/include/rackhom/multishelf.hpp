#pragma once

#include <optional>
#include <string>
#include <vector>

namespace rackhom {

// Claimed axiom level per operation.
enum class Level { Shelf, Spindle, Rack, Quandle };

std::string level_name(Level l);
std::optional<Level> level_from_name(const std::string& s);

struct OperationTable {
    int size = 0;
    std::vector<std::vector<int>> table;  // table[x][y] = x |> y

    int apply(int x, int y) const { return table[x][y]; }
};

struct AxiomWitness {
    std::string axiom;  // which axiom failed
    int op_i = -1, op_j = -1;
    int x = -1, y = -1, z = -1;
    std::string describe() const;
};

// Finite carrier {0..n-1} with r mutually distributive operations.
// Constructed only through validated factories; immutable afterwards.
struct Multishelf {
    int size = 0;
    std::vector<OperationTable> ops;
    std::vector<Level> levels;
    std::string name;

    int num_ops() const { return static_cast<int>(ops.size()); }
    int op(int k, int x, int y) const { return ops[k].apply(x, y); }
    bool is_spindle(int k) const { return levels[k] == Level::Spindle || levels[k] == Level::Quandle; }
    bool is_rack(int k) const { return levels[k] == Level::Rack || levels[k] == Level::Quandle; }
};

// Exhaustive O(n^3 r^2) axiom check. Returns nullopt on success.
std::optional<AxiomWitness> validate_axioms(const Multishelf& X);

// Throws std::invalid_argument (with the witness description) on failure.
Multishelf make_multishelf(int size, std::vector<OperationTable> ops, std::vector<Level> levels,
                           std::string name = "");

// Families: trivial, dihedral, right_projection, trivial_pair.
Multishelf standard_family(const std::string& family, int size);

// Appends the trivial operation x |> y = x (level spindle on shelves,
// quandle otherwise) and revalidates.
Multishelf adjoin_trivial_op(const Multishelf& X);

struct ShelfHom {
    const Multishelf* source = nullptr;
    const Multishelf* target = nullptr;
    std::vector<int> map;

    int operator()(int x) const { return map[x]; }
    bool is_bijective() const;
};

struct HomWitness {
    int op = -1, x = -1, y = -1;
};

// True iff map(x |>_k y) = map(x) |>'_k map(y) for all k, x, y.
// Throws on operation-count mismatch.
std::optional<HomWitness> validate_homomorphism(const ShelfHom& h);

ShelfHom identity_hom(const Multishelf& X);
ShelfHom compose(const ShelfHom& f, const ShelfHom& g);  // g after f

// All homomorphisms X -> Y, lexicographic by the map array.
std::vector<ShelfHom> enumerate_homs(const Multishelf& X, const Multishelf& Y);

}  // namespace rackhom
