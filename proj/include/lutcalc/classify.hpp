#pragma once

#include <string>
#include <vector>

#include "abelian.hpp"
#include "coset.hpp"
#include "derivation.hpp"
#include "tietze.hpp"

namespace lutcalc {

enum class Claim { Trivial, FiniteOrder, InfiniteCyclic, FreeAbelian, FiniteAbelian, Abelian, Free, Unknown };
enum class Method { None, Enumeration, Simplification, Derivation };

struct BudgetUsed {
    long long cosets = 0;
    long long peak_table = 0;
    int tietze_passes = 0;
    int derivation_depth = 0;
    long long derivation_nodes = 0;

    bool operator==(const BudgetUsed&) const = default;
};

struct Certificate {
    Claim claim = Claim::Unknown;
    long long n = 0;         // order, rank
    AbelianGroup group;      // abelian claims
    Method method = Method::None;
    BudgetUsed used;
    int simplified_generators = -1;
    int simplified_relators = -1;
    std::vector<Derivation> commutators;  // one per generator pair when the method is derivation

    bool operator==(const Certificate& o) const {
        return claim == o.claim && n == o.n && group == o.group && method == o.method && used == o.used;
    }
};

inline std::string method_name(Method m) {
    switch (m) {
        case Method::Enumeration: return "enumeration";
        case Method::Simplification: return "simplification";
        case Method::Derivation: return "derivation";
        default: return "none";
    }
}

inline std::string claim_name(const Certificate& c) {
    switch (c.claim) {
        case Claim::Trivial: return "trivial";
        case Claim::FiniteOrder: return "finite-of-order-" + std::to_string(c.n);
        case Claim::InfiniteCyclic: return "infinite-cyclic";
        case Claim::FreeAbelian: return "free-abelian-rank-" + std::to_string(c.n);
        case Claim::FiniteAbelian: return "finite-abelian(" + format_abelian(c.group) + ")";
        case Claim::Abelian: return "abelian(" + format_abelian(c.group) + ")";
        case Claim::Free: return "free-rank-" + std::to_string(c.n);
        default: return "unknown";
    }
}

// Decision ladder. Trivial and finite claims come only from coset enumeration, which is
// attempted only when the abelianization is finite.
inline Certificate classify(const Presentation& p, const Budget& budget = {}) {
    Certificate cert;
    AbelianGroup h = abelianize(p);
    if (h.finite()) {
        auto tc = todd_coxeter(p, {}, budget);
        cert.used.cosets = tc.cosets_defined;
        cert.used.peak_table = tc.peak_table;
        if (tc.index) {
            cert.method = Method::Enumeration;
            long long n = *tc.index;
            if (n == 1) {
                cert.claim = Claim::Trivial;
            } else if (BigInt(n) == h.order()) {
                cert.claim = Claim::FiniteAbelian;
                cert.group = h;
            } else {
                cert.claim = Claim::FiniteOrder;
            }
            cert.n = n;
            return cert;
        }
        if (h.trivial()) return cert;
    }
    SimplifyResult s = tietze_simplify(p, budget);
    cert.used.tietze_passes = s.passes;
    const Presentation& q = s.presentation;
    cert.simplified_generators = q.ngens();
    cert.simplified_relators = static_cast<int>(q.relators.size());
    bool infinite_cyclic = h.free_rank == 1 && h.torsion.empty();
    if (q.ngens() == 1 && infinite_cyclic) {
        cert.claim = Claim::InfiniteCyclic;
        cert.method = Method::Simplification;
        cert.n = 1;
        return cert;
    }
    if (q.ngens() >= 2 && q.relators.empty()) {
        cert.claim = Claim::Free;
        cert.method = Method::Simplification;
        cert.n = q.ngens();
        return cert;
    }
    std::vector<Derivation> ds;
    for (int i = 0; i < q.ngens(); ++i)
        for (int j = i + 1; j < q.ngens(); ++j) {
            auto r = prove_word_trivial(q, commutator(Word::gen(i), Word::gen(j)), budget);
            cert.used.derivation_nodes += r.nodes;
            if (!r.derivation) {
                cert.used.derivation_depth = std::max(cert.used.derivation_depth, r.depth_reached);
                return cert;
            }
            cert.used.derivation_depth = std::max(cert.used.derivation_depth, static_cast<int>(r.derivation->depth()));
            ds.push_back(*r.derivation);
        }
    cert.method = Method::Derivation;
    cert.commutators = std::move(ds);
    cert.group = h;
    if (h.torsion.empty()) {
        cert.claim = Claim::FreeAbelian;
        cert.n = h.free_rank;
    } else {
        cert.claim = h.finite() ? Claim::FiniteAbelian : Claim::Abelian;
    }
    return cert;
}

}  // namespace lutcalc
