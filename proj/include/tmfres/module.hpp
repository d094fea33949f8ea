#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tmfres/gf2.hpp"
#include "tmfres/milnor.hpp"

namespace tmfres {

// A finite graded module over A(n), presented Bruner-style: an F2-basis of
// "generators" with degrees, plus sparse Sq^i action lines.  Only the
// Sq^{2^k} lines define the structure; other lines are retained and checked
// against the admissible-composition expansion by validate_module.
struct SteenrodModule {
    const Algebra* alg = &Algebra::A(2);
    std::vector<int> degrees;
    std::map<std::pair<int, int>, std::vector<int>> action;  // (i, g) -> targets

    int dim() const { return int(degrees.size()); }
};

// Dense action tables: one n x n bit matrix per Milnor basis element,
// compiled from the Sq^1/Sq^2/Sq^4 matrices through generator words.
class CompiledModule {
public:
    CompiledModule() : alg_(&Algebra::A(2)) {}
    explicit CompiledModule(const SteenrodModule& m);

    const Algebra& alg() const { return *alg_; }
    int dim() const { return int(degrees_.size()); }
    const std::vector<int>& degrees() const { return degrees_; }
    const std::map<int, std::vector<int>>& by_degree() const { return by_degree_; }

    // Column g of the action of basis element b.
    const gf2::BitVec& column(int b, int g) const { return act_[size_t(b)][size_t(g)]; }
    gf2::BitVec apply(int b, const gf2::BitVec& v) const;
    gf2::BitVec apply(AlgebraElement mask, const gf2::BitVec& v) const;

    // Raw constructor for internally built modules (matrices indexed by the
    // algebra generators Sq^1, Sq^2, Sq^4 in order).
    static CompiledModule from_generator_matrices(const Algebra& alg, std::vector<int> degrees,
                                                  std::vector<std::vector<gf2::BitVec>> gens);

    // Presentation with action lines for every Sq^i in the profile.
    SteenrodModule presentation() const;

    // True generator-rule check: act(Sq^g) act(b) == act(Sq^g b) for all
    // algebra generators g and basis elements b (complete module axiom check).
    std::vector<std::string> check_axioms() const;

private:
    const Algebra* alg_;
    std::vector<int> degrees_;
    std::map<int, std::vector<int>> by_degree_;
    std::vector<std::vector<gf2::BitVec>> act_;  // [algebra basis][column]

    void finish_compile(const std::vector<std::vector<gf2::BitVec>>& gen_mats);
};

// Bruner module-definition format: generator count, degree line, then
// "g i k t1 ... tk" action lines; blank lines ignored; zero-based indices.
SteenrodModule parse_bruner(const std::string& text, const Algebra& alg = Algebra::A(2));
std::string emit_bruner(const CompiledModule& m);

struct ValidationReport {
    bool valid = true;
    std::vector<std::string> violations;
};

ValidationReport validate_module(const SteenrodModule& m);

enum class StandardModule { BO, TMF, A2modA1, M1, DualBO1, Regular };

// Weight-truncated duals of the Brown-Gitler comodules and friends.  For BO
// and TMF the index j selects the weight bound (4j resp. 8j); other names
// ignore j.  budget caps the basis size.
CompiledModule build_standard(StandardModule name, unsigned j = 0, size_t budget = 4096);

CompiledModule tensor(const CompiledModule& a, const CompiledModule& b);
CompiledModule suspend(const CompiledModule& m, int k);
CompiledModule dual(const CompiledModule& m);

using GradedVectorSpace = std::map<int, int>;  // degree -> dimension

GradedVectorSpace graded_dims(const CompiledModule& m);

enum class MargolisOp { Q0, Q1, Q2, P21 };
const char* margolis_op_name(MargolisOp op);

// Kernel mod image of a square-zero Milnor primitive, per degree.
GradedVectorSpace margolis_homology(const CompiledModule& m, MargolisOp op);

// Minimal module generators per degree (complement of A^+ M).
std::map<int, std::vector<gf2::BitVec>> minimal_generators(const CompiledModule& m);

// A graded A(n)-linear map, stored by columns on the domain basis.
struct ModuleMap {
    std::vector<gf2::BitVec> columns;  // image of domain basis vector i
};

struct SesReport {
    bool found = false;
    bool dimension_ok = true;
    // per-degree dimensions (a, b, c) for the certificate
    std::map<int, std::array<int, 3>> dims;
    std::string detail;
    std::optional<ModuleMap> injection;
};

// Searches for a degreewise injection a -> b commuting with the Sq action
// whose cokernel is isomorphic to c.  Impossibility is reported, not thrown.
SesReport find_ses(const CompiledModule& a, const CompiledModule& b, const CompiledModule& c);

// Backtracking search for a degree-preserving isomorphism commuting with
// the Sq action; nullopt if none exists.
std::optional<ModuleMap> iso_test(const CompiledModule& a, const CompiledModule& b);

// Rational group ring of the symmetric group on 3 letters; checks the
// idempotent decomposition 1 = f1 + f2 + e used for the triple smash
// splitting (2-locality: all denominators odd).
struct IdempotentReport {
    bool ok = false;
    std::vector<std::string> checks;  // one line per verified identity
};

IdempotentReport verify_sigma3_idempotents();

}  // namespace tmfres
