#ifndef IQK_QUADFORM_HPP
#define IQK_QUADFORM_HPP

#include <unordered_map>
#include <vector>

#include "iqk/abelian.hpp"
#include "iqk/arith.hpp"

namespace iqk {

// Raised for discriminants that are valid (negative, 0 or 1 mod 4) but not
// fundamental; callers distinguish this from plain invalid input because
// non-maximal orders are legal elsewhere (ring class groups).
struct NonFundamentalDiscriminant : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

bool is_valid_discriminant(const Int& d);  // d < 0 and d = 0,1 mod 4
bool is_fundamental_discriminant(const Int& d);
void require_fundamental(const Int& d);

// Positive-definite binary quadratic form a*x^2 + b*xy + c*y^2.
struct QuadForm {
    Int a, b, c;

    Int discriminant() const { return b * b - 4 * a * c; }
    QuadForm inverse() const { return {a, -b, c}; }
    QuadForm conj() const { return {a, -b, c}; }  // sigma-action = inversion
    bool is_reduced() const;
    bool operator==(const QuadForm& o) const = default;
    std::string str() const;
};

QuadForm principal_form(const Int& d);

// Unique reduced representative of the class of f.
QuadForm reduce(const QuadForm& f);

// Reduction with the SL2(Z) change of basis: result = f transformed by m.
struct ReducedWithTransform {
    QuadForm form;
    Mat m;  // 2x2, det 1
};
ReducedWithTransform reduce_with_transform(const QuadForm& f);

// Gauss composition (via united forms), returned reduced.
QuadForm compose(const QuadForm& f, const QuadForm& g);
QuadForm form_pow(const QuadForm& f, const Int& e);

// An SL2(Z)-equivalent form whose leading coefficient is coprime to m.
QuadForm form_prime_to(const QuadForm& f, const Int& m);

// All reduced forms of discriminant d (primitive ones only when
// primitive_only is set), in a fixed deterministic order.
std::vector<QuadForm> enumerate_reduced_forms(const Int& d, bool primitive_only);

// Form class group of a negative discriminant. For fundamental d this is the
// ideal class group of Q(sqrt(d)); on non-maximal discriminants (primitive
// forms only) it is the ring class group of the corresponding order.
class ClassGroup {
  public:
    // Fundamental discriminants only; rejects non-fundamental d distinctly.
    static ClassGroup of_maximal_order(const Int& d);
    // Any valid negative discriminant (used for ring class groups).
    static ClassGroup of_discriminant(const Int& d);

    const Int& disc() const { return d_; }
    Int h() const { return Int(static_cast<long>(forms_.size())); }
    const std::vector<QuadForm>& forms() const { return forms_; }
    const std::vector<QuadForm>& generators() const { return gens_; }
    const FinAbGroup& group() const { return pres_.group; }
    const Presentation& presentation() const { return pres_; }

    // Canonical coordinates of the class of f (f need not be reduced).
    std::vector<Int> dl(const QuadForm& f) const;
    // A form realizing the given canonical coordinates.
    QuadForm form_for(const std::vector<Int>& coords) const;

  private:
    explicit ClassGroup(const Int& d);
    Int d_;
    std::vector<QuadForm> forms_;
    std::vector<QuadForm> gens_;
    Presentation pres_;
    std::unordered_map<std::string, std::vector<Int>> exps_;  // reduced form -> exponents on gens_
};

}  // namespace iqk

#endif
