// rackhom: deterministic CLI for multispindle homology.
//
// Subcommands:
//   validate  <structure> [--module FILE]
//   homology  <structure> [--module FILE] [--weights W] [--ring R] [--part P]
//             [--max-degree N] [--format F] [--memory-budget B]
//   spectral  <structure> [--ring R] [--weights W] [--max-degree N]
//   verify    [SELECTOR]  [--max-degree N] [--seed S] [--trials T]
//
// <structure> is a structure-file path or builtin:<name> with name one of
// T1 T2 T3 R3 P2 TP2 T1+triv T2+triv T3+triv R3+triv P2+triv.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "rackhom/fixtures.hpp"
#include "rackhom/homology.hpp"
#include "rackhom/io.hpp"
#include "rackhom/spectral.hpp"
#include "rackhom/verify_suite.hpp"

namespace {

using namespace rackhom;

const Multishelf* builtin_fixture(const std::string& name) {
    for (const Multishelf* X : all_fixtures())
        if (X->name == name) return X;
    return nullptr;
}

// Owns the structure whether it came from a file or a builtin.
struct LoadedStructure {
    const Multishelf* X = nullptr;
    Multishelf owned;
};

LoadedStructure load_structure(const std::string& ref) {
    LoadedStructure out;
    if (ref.rfind("builtin:", 0) == 0) {
        out.X = builtin_fixture(ref.substr(8));
        if (!out.X) throw ParseError("unknown builtin structure '" + ref.substr(8) + "'");
        return out;
    }
    std::ifstream in(ref);
    if (!in) throw ParseError("cannot open structure file '" + ref + "'");
    out.owned = parse_structure(in);
    out.X = &out.owned;
    return out;
}

PartSelector parse_part(const std::string& s) {
    if (s == "full") return PartSelector::full();
    if (s == "degenerate") return PartSelector::degenerate();
    if (s == "normalized") return PartSelector::normalized();
    if (s == "late") return PartSelector::late();
    if (s.rfind("filtration:", 0) == 0) return PartSelector::filtration(std::stoi(s.substr(11)));
    throw ParseError("unknown part '" + s + "'");
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

// Calls f(rg) with the concrete ring type selected by the RingSpec.
template <class F>
int with_ring(const RingSpec& rs, F&& f) {
    switch (rs.kind) {
        case RingSpec::Kind::Z: return f(ZRing{});
        case RingSpec::Kind::Q: return f(QRing{});
        default: return f(FpRing{rs.p});
    }
}

struct CommonArgs {
    std::string structure;
    std::string module_path;
    std::string weights;
    std::string ring = "Z";
    std::string part = "full";
    int max_degree = 3;
    std::string format = "table";
    std::size_t memory_budget = std::size_t(2) << 30;
};

template <class R>
ActionModule<R> resolve_module(const Multishelf& X, const std::string& module_path, R rg,
                               const RingSpec& rs) {
    if (module_path.empty()) return trivial_module(X, 1, rg);
    std::ifstream in(module_path);
    if (!in) throw ParseError("cannot open module file '" + module_path + "'");
    auto data = parse_module(in, X);
    if (!(data.ring == rs))
        throw ParseError("module file ring " + data.ring.name() + " does not match --ring " +
                         rs.name());
    return instantiate_module(data, X, rg);
}

template <class R>
Weights<R> resolve_weights(const Multishelf& X, const std::string& weights, R rg) {
    if (weights.empty()) {
        if (X.num_ops() == 2) return rack_weights(rg, X);
        return one_term_weights(rg, X);
    }
    auto toks = split_commas(weights);
    if (static_cast<int>(toks.size()) != X.num_ops())
        throw ParseError("expected " + std::to_string(X.num_ops()) + " weights, got " +
                         std::to_string(toks.size()));
    Weights<R> w;
    for (const auto& t : toks) w.push_back(detail::parse_ring_elem(rg, t));
    return w;
}

int cmd_validate(const CommonArgs& a) {
    auto ls = load_structure(a.structure);  // throws with a witness on failure
    emit_structure(std::cout, *ls.X);
    std::cout << "axioms: ok\n";
    if (!a.module_path.empty()) {
        std::ifstream in(a.module_path);
        if (!in) throw ParseError("cannot open module file '" + a.module_path + "'");
        auto data = parse_module(in, *ls.X);
        with_ring(data.ring, [&](auto rg) {
            auto M = instantiate_module(data, *ls.X, rg);  // throws on invalid action
            std::cout << "module ring=" << data.ring.name() << " rank=" << M.rank
                      << " action: ok\n";
            return 0;
        });
    }
    return 0;
}

int cmd_homology(const CommonArgs& a) {
    auto ls = load_structure(a.structure);
    RingSpec rs = parse_ring_spec(a.ring);
    PartSelector part = parse_part(a.part);
    return with_ring(rs, [&](auto rg) {
        auto M = resolve_module(*ls.X, a.module_path, rg, rs);
        auto w = resolve_weights(*ls.X, a.weights, rg);
        BuildOptions opts;
        opts.memory_budget_bytes = a.memory_budget;
        auto C = build_complex(*ls.X, M, w, part, a.max_degree + 1, false, opts);
        std::string provenance = ls.X->name + "/" + part.str() + "/rank" + std::to_string(M.rank);
        if (a.format == "records") {
            emit_structure(std::cout, *ls.X);
            for (int n = 0; n <= a.max_degree; ++n) {
                auto g = homology_group(C, n);
                std::cout << "homology degree=" << n << " ring=" << rg.name()
                          << " part=" << part.str() << " free_rank=" << g.free_rank
                          << " invariants=";
                for (std::size_t i = 0; i < g.invariants.size(); ++i)
                    std::cout << (i ? "," : "") << g.invariants[i].str();
                if (g.invariants.empty()) std::cout << "-";
                std::cout << " provenance=" << provenance << "\n";
            }
        } else {
            using R = decltype(rg);
            for (int n = 0; n <= a.max_degree; ++n) {
                auto g = homology_group(C, n);
                if constexpr (R::is_field) {
                    std::cout << n << ": "
                              << (g.free_rank == 0
                                      ? std::string("0")
                                      : rg.name() + (g.free_rank > 1
                                                         ? "^" + std::to_string(g.free_rank)
                                                         : ""))
                              << "\n";
                } else {
                    std::cout << n << ": " << g.str() << "\n";
                }
            }
        }
        return 0;
    });
}

int cmd_spectral(const CommonArgs& a) {
    auto ls = load_structure(a.structure);
    RingSpec rs = parse_ring_spec(a.ring);
    if (rs.kind == RingSpec::Kind::Z)
        throw ParseError("spectral: a field ring is required (Q or Fp:<p>)");
    return with_ring(rs, [&](auto rg) {
        using R = decltype(rg);
        if constexpr (R::is_field) {
            auto M = resolve_module(*ls.X, a.module_path, rg, rs);
            auto w = resolve_weights(*ls.X, a.weights, rg);
            auto CD = build_complex(*ls.X, M, w, PartSelector::degenerate(), a.max_degree + 1);
            auto FC = filtered_degenerate(CD);
            SpectralSequence<R> E(FC);
            emit_structure(std::cout, *ls.X);
            for (int r = 1; r <= 3; ++r)
                for (int n = 0; n <= a.max_degree; ++n)
                    for (int p = 0; p <= n; ++p) {
                        int q = n - p;
                        std::cout << "page r=" << r << " p=" << p << " q=" << q
                                  << " dim=" << E.dim(r, p, q) << "\n";
                    }
            for (int r = 1; r <= 2; ++r)
                for (int n = 0; n <= a.max_degree; ++n)
                    for (int p = 0; p <= n; ++p) {
                        int q = n - p;
                        auto D = E.d_matrix(r, p, q);
                        std::cout << "d r=" << r << " p=" << p << " q=" << q << " :";
                        emit_matrix_triples(std::cout, D);
                        std::cout << "\n";
                    }
            for (int n = 0; n <= a.max_degree; ++n)
                for (int p = 0; p <= n; ++p)
                    std::cout << "einf p=" << p << " q=" << (n - p)
                              << " dim=" << E.dim_inf(p, n - p) << " grH=" << E.dim_grH(p, n)
                              << "\n";
        }
        return 0;
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rackhom: homology of finite multispindles"};
    app.require_subcommand(1);

    CommonArgs a;
    std::string selector = "all";
    std::uint64_t seed = 20240811;
    int trials = 100;

    auto add_common = [&](CLI::App* cmd, bool with_structure) {
        if (with_structure)
            cmd->add_option("structure", a.structure, "structure file or builtin:<name>")
                ->required();
        cmd->add_option("--module", a.module_path, "module file");
        cmd->add_option("--weights", a.weights, "comma-separated ring elements");
        cmd->add_option("--ring", a.ring, "Z, Q, or Fp:<p>");
        cmd->add_option("--part", a.part, "full|degenerate|normalized|late|filtration:<p>");
        cmd->add_option("--max-degree", a.max_degree, "highest homology degree");
        cmd->add_option("--format", a.format, "table|records");
        cmd->add_option("--memory-budget", a.memory_budget, "bytes");
    };

    auto* validate = app.add_subcommand("validate", "validate a structure (and module)");
    add_common(validate, true);
    auto* homology = app.add_subcommand("homology", "compute a homology table");
    add_common(homology, true);
    auto* spectral = app.add_subcommand("spectral", "emit spectral sequence pages");
    add_common(spectral, true);
    auto* verify = app.add_subcommand("verify", "run the theorem-verification suite");
    verify->add_option("selector", selector,
                       "all|axioms|splitting|late-splitting|homotopy|spectral|one-term-iso|"
                       "recursive-count|two-term-iso|kunneth|corollaries|staircase");
    verify->add_option("--max-degree", a.max_degree, "homology degree bound (default 4)");
    verify->add_option("--seed", seed, "random seed for the staircase harness");
    verify->add_option("--trials", trials, "random staircase morphism count");

    a.max_degree = 3;
    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(a);
        if (homology->parsed()) return cmd_homology(a);
        if (spectral->parsed()) return cmd_spectral(a);
        if (verify->parsed()) {
            VerifyOptions opts;
            opts.max_degree = verify->count("--max-degree") ? a.max_degree : 4;
            opts.seed = seed;
            opts.staircase_trials = trials;
            auto led = rackhom::run_verify(selector, opts);
            emit_ledger(std::cout, led);
            return led.all_ok() ? 0 : 1;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const MemoryBudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
