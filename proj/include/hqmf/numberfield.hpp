#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hqmf/poly.hpp"
#include "hqmf/rational.hpp"

namespace hqmf {

// ℚ[x]/(minpoly) for a monic irreducible minpoly.
struct NumberFieldSpec {
    std::vector<Rational> minpoly;  // ascending coefficients, monic
    std::string label;

    int degree() const { return static_cast<int>(minpoly.size()) - 1; }
};

using FieldPtr = std::shared_ptr<const NumberFieldSpec>;

// Validates monicity and (for degree <= 3) irreducibility by the rational-root test.
FieldPtr make_field(std::vector<Rational> minpoly, std::string label);

// x^3 - x^2 + 1
FieldPtr xi_field();
// x^3 + x^2 - 2x - 1
FieldPtr eta_field();

// An element of a number field, stored by its reduced coordinates on the
// power basis 1, x, ..., x^{d-1}.  An element with a null field is a bare
// rational constant; it adopts the field of the other operand.
class NumberFieldElement {
public:
    NumberFieldElement() = default;
    NumberFieldElement(const Rational& c);  // NOLINT: rational constants embed
    NumberFieldElement(FieldPtr f, const Rational& c);
    NumberFieldElement(FieldPtr f, std::vector<Rational> coords);

    static NumberFieldElement generator(FieldPtr f);

    const FieldPtr& field() const { return f_; }
    // coordinates padded to the field degree (length 1 for bare constants)
    std::vector<Rational> coords() const;
    Rational coord(int i) const;

    bool is_zero() const;
    bool is_rational() const;

    NumberFieldElement inverse() const;
    NumberFieldElement pow(long e) const;

    friend NumberFieldElement operator+(const NumberFieldElement& a, const NumberFieldElement& b);
    friend NumberFieldElement operator-(const NumberFieldElement& a, const NumberFieldElement& b);
    friend NumberFieldElement operator-(const NumberFieldElement& a);
    friend NumberFieldElement operator*(const NumberFieldElement& a, const NumberFieldElement& b);
    friend NumberFieldElement operator/(const NumberFieldElement& a, const NumberFieldElement& b);
    friend bool operator==(const NumberFieldElement& a, const NumberFieldElement& b);
    friend bool operator!=(const NumberFieldElement& a, const NumberFieldElement& b) { return !(a == b); }

    std::string to_string(const std::string& var = "x") const;

private:
    static FieldPtr common(const NumberFieldElement& a, const NumberFieldElement& b);
    void reduce_from(std::vector<Rational> full);

    FieldPtr f_;
    std::vector<Rational> c_;  // trimmed of trailing zeros
};

using NFElem = NumberFieldElement;

inline bool is_zero(const NFElem& a) { return a.is_zero(); }
inline NFElem zero_like(const NFElem& a) { return NFElem(a.field(), Rational(0)); }
inline NFElem one_like(const NFElem& a) { return NFElem(a.field(), Rational(1)); }
inline NFElem exact_div(const NFElem& a, const NFElem& b) { return a / b; }
inline int pivot_score(const NFElem&) { return 0; }

// λ-polynomials over a number field: the c_k(α, λ)
using NFPoly = Poly<NFElem>;

}  // namespace hqmf
