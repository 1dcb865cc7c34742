#include "rackhom/multishelf.hpp"

#include <sstream>
#include <stdexcept>

namespace rackhom {

std::string level_name(Level l) {
    switch (l) {
        case Level::Shelf: return "shelf";
        case Level::Spindle: return "spindle";
        case Level::Rack: return "rack";
        default: return "quandle";
    }
}

std::optional<Level> level_from_name(const std::string& s) {
    if (s == "shelf") return Level::Shelf;
    if (s == "spindle") return Level::Spindle;
    if (s == "rack") return Level::Rack;
    if (s == "quandle") return Level::Quandle;
    return std::nullopt;
}

std::string AxiomWitness::describe() const {
    std::ostringstream os;
    os << axiom << " fails for op " << op_i;
    if (op_j >= 0 && op_j != op_i) os << "/" << op_j;
    os << " at (" << x << "," << y;
    if (z >= 0) os << "," << z;
    os << ")";
    return os.str();
}

std::optional<AxiomWitness> validate_axioms(const Multishelf& X) {
    const int n = X.size;
    const int r = X.num_ops();
    if (n <= 0 || r == 0 || static_cast<int>(X.levels.size()) != r)
        return AxiomWitness{"malformed structure", 0, -1, 0, 0, -1};
    for (int k = 0; k < r; ++k) {
        if (X.ops[k].size != n || static_cast<int>(X.ops[k].table.size()) != n)
            return AxiomWitness{"table size mismatch", k, -1, 0, 0, -1};
        for (int x = 0; x < n; ++x) {
            if (static_cast<int>(X.ops[k].table[x].size()) != n)
                return AxiomWitness{"table size mismatch", k, -1, x, 0, -1};
            for (int y = 0; y < n; ++y) {
                int v = X.op(k, x, y);
                if (v < 0 || v >= n) return AxiomWitness{"entry out of range", k, -1, x, y, -1};
            }
        }
    }
    // self-distributivity
    for (int k = 0; k < r; ++k)
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z)
                    if (X.op(k, X.op(k, x, y), z) != X.op(k, X.op(k, x, z), X.op(k, y, z)))
                        return AxiomWitness{"self-distributivity", k, k, x, y, z};
    // mutual distributivity: (x |>_i y) |>_j z = (x |>_j z) |>_i (y |>_j z)
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            if (i == j) continue;
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y)
                    for (int z = 0; z < n; ++z)
                        if (X.op(j, X.op(i, x, y), z) != X.op(i, X.op(j, x, z), X.op(j, y, z)))
                            return AxiomWitness{"mutual distributivity", i, j, x, y, z};
        }
    // idempotency
    for (int k = 0; k < r; ++k) {
        if (!X.is_spindle(k)) continue;
        for (int x = 0; x < n; ++x)
            if (X.op(k, x, x) != x) return AxiomWitness{"idempotency", k, k, x, x, -1};
    }
    // rack: x -> x |>_k y bijective for each y
    for (int k = 0; k < r; ++k) {
        if (!X.is_rack(k)) continue;
        for (int y = 0; y < n; ++y) {
            std::vector<bool> seen(n, false);
            for (int x = 0; x < n; ++x) {
                int v = X.op(k, x, y);
                if (seen[v]) return AxiomWitness{"column bijectivity", k, k, x, y, -1};
                seen[v] = true;
            }
        }
    }
    return std::nullopt;
}

Multishelf make_multishelf(int size, std::vector<OperationTable> ops, std::vector<Level> levels,
                           std::string name) {
    Multishelf X{size, std::move(ops), std::move(levels), std::move(name)};
    if (auto w = validate_axioms(X)) throw std::invalid_argument("invalid multishelf: " + w->describe());
    return X;
}

namespace {

OperationTable trivial_table(int n) {
    OperationTable t{n, std::vector<std::vector<int>>(n, std::vector<int>(n))};
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) t.table[x][y] = x;
    return t;
}

}  // namespace

Multishelf standard_family(const std::string& family, int size) {
    if (size < 1) throw std::invalid_argument("standard_family: size must be positive");
    if (family == "trivial") {
        return make_multishelf(size, {trivial_table(size)}, {Level::Quandle},
                               "T" + std::to_string(size));
    }
    if (family == "dihedral") {
        if (size < 2) throw std::invalid_argument("standard_family: dihedral needs size >= 2");
        OperationTable t{size, std::vector<std::vector<int>>(size, std::vector<int>(size))};
        for (int x = 0; x < size; ++x)
            for (int y = 0; y < size; ++y) t.table[x][y] = ((2 * y - x) % size + size) % size;
        return make_multishelf(size, {t}, {Level::Quandle}, "R" + std::to_string(size));
    }
    if (family == "right_projection") {
        OperationTable t{size, std::vector<std::vector<int>>(size, std::vector<int>(size))};
        for (int x = 0; x < size; ++x)
            for (int y = 0; y < size; ++y) t.table[x][y] = y;
        return make_multishelf(size, {t}, {Level::Spindle}, "P" + std::to_string(size));
    }
    if (family == "trivial_pair") {
        return make_multishelf(size, {trivial_table(size), trivial_table(size)},
                               {Level::Quandle, Level::Quandle}, "TP" + std::to_string(size));
    }
    throw std::invalid_argument("standard_family: unknown family '" + family + "'");
}

Multishelf adjoin_trivial_op(const Multishelf& X) {
    Multishelf Y = X;
    Y.ops.push_back(trivial_table(X.size));
    Y.levels.push_back(Level::Quandle);
    Y.name = X.name.empty() ? "" : X.name + "+triv";
    if (auto w = validate_axioms(Y))
        throw std::logic_error("adjoin_trivial_op broke the axioms: " + w->describe());
    return Y;
}

bool ShelfHom::is_bijective() const {
    if (source->size != target->size) return false;
    std::vector<bool> seen(target->size, false);
    for (int v : map) {
        if (seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

std::optional<HomWitness> validate_homomorphism(const ShelfHom& h) {
    const Multishelf& X = *h.source;
    const Multishelf& Y = *h.target;
    if (X.num_ops() != Y.num_ops())
        throw std::invalid_argument("validate_homomorphism: operation counts differ");
    for (int k = 0; k < X.num_ops(); ++k)
        for (int x = 0; x < X.size; ++x)
            for (int y = 0; y < X.size; ++y)
                if (h.map[X.op(k, x, y)] != Y.op(k, h.map[x], h.map[y]))
                    return HomWitness{k, x, y};
    return std::nullopt;
}

ShelfHom identity_hom(const Multishelf& X) {
    ShelfHom h{&X, &X, std::vector<int>(X.size)};
    for (int i = 0; i < X.size; ++i) h.map[i] = i;
    return h;
}

ShelfHom compose(const ShelfHom& f, const ShelfHom& g) {
    ShelfHom h{f.source, g.target, std::vector<int>(f.source->size)};
    for (int i = 0; i < f.source->size; ++i) h.map[i] = g.map[f.map[i]];
    return h;
}

std::vector<ShelfHom> enumerate_homs(const Multishelf& X, const Multishelf& Y) {
    std::vector<ShelfHom> out;
    if (X.num_ops() != Y.num_ops()) return out;
    std::vector<int> map(X.size, 0);
    while (true) {
        ShelfHom h{&X, &Y, map};
        if (!validate_homomorphism(h)) out.push_back(std::move(h));
        int i = X.size - 1;
        while (i >= 0 && map[i] == Y.size - 1) map[i--] = 0;
        if (i < 0) break;
        ++map[i];
    }
    return out;
}

}  // namespace rackhom
