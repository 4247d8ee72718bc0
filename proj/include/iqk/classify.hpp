#ifndef IQK_CLASSIFY_HPP
#define IQK_CLASSIFY_HPP

#include "iqk/iwasawa.hpp"
#include "iqk/rayclass.hpp"

namespace iqk {

struct InternalConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Case1: p totally decomposed; Case2a/2b: p = 3 with disc = -3 mod 9 (2a is
// the field of cube roots of unity itself); Case3: the rest.
enum class CaseTag { Case1, Case2a, Case2b, Case3 };

const char* to_string(CaseTag t);
CaseTag classify_case(const Int& d, const Int& p);

struct Options {
    long ray_depth = 6;    // levels for the ray-class stabilization
    long anti_depth = 5;   // levels for the ring-class tower
    long precision = 0;    // local-unit precision override (0 = automatic)
    long arm_depth = 3;    // commutator arms shown in presentations
};

struct CheckResult {
    std::string name;
    bool pass = false;
    bool skipped = false;
    std::string detail;
};

struct GenSym {
    std::string name;
    std::string sigma;  // behaviour under complex conjugation
};

struct InertiaFamily {
    std::string base;           // the element whose iterated s-commutators generate
    bool whole_subgroup = false;  // Case2a: I_0 is all of H
    long arms_shown = 0;
    bool unbounded = true;
};

struct PresentationSymbolic {
    CaseTag tag;
    std::vector<GenSym> generators;
    GenSym frobenius;
    std::vector<InertiaFamily> families;
    std::string relation_statement;
    std::string xk_formula;
    std::vector<std::string> notes;
};

PresentationSymbolic presentation_xk(const Int& d, const Int& p, long arm_depth = 3);

struct LambdaStructure {
    std::string kind;
    std::string text;
    std::string freeness;
};

struct ClassificationReport {
    Int disc, prime;
    CaseTag tag;
    Int h;
    std::vector<Int> class_group;
    long r = 0;
    long delta_k = 0;
    long d_k = 0;
    long relation_rank = 0;
    std::vector<Int> gab_tors_predicted;
    bool predicted_exact = true;  // false when only an upper bound / extension shape
    std::vector<Int> gab_tors_observed;
    bool observed_stabilized = false;
    long hypothesis_t = 0;
    bool hypothesis_confident = false;
    LambdaStructure lambda_structure;
    PresentationSymbolic presentation;
    std::vector<CheckResult> verification;
    std::vector<std::string> notes;
    long unit_dim = 0, unit_plus_dim = 0, unit_minus_dim = 0, unit_dim_mod_mu = 0;

    bool all_checks_pass() const;
};

ClassificationReport invariants_report(const Int& d, const Int& p, const Options& opts = {});
std::vector<CheckResult> cross_verify(const Int& d, const Int& p, const Options& opts = {});

std::string report_json(const ClassificationReport& r);
std::string report_text(const ClassificationReport& r);

// True iff t fits into an exact sequence 1 -> Z/3 -> t -> a -> 1 (exact
// quotient match) or, with exact=false, with the quotient merely embedding.
bool is_extension_by_z3(const FinAbGroup& t, const FinAbGroup& a, bool exact);

}  // namespace iqk

#endif
