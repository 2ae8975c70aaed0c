#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace filippov {

/// Exponent pair (i, j) of the monomial x^i y^j.
using Monomial = std::pair<int, int>;

/// Sparse bivariate polynomial with real coefficients.
///
/// The coefficient map never stores an exact zero; every arithmetic operation
/// re-canonicalizes its result.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(double constant);
    explicit Polynomial(std::map<Monomial, double> coefficients);

    static Polynomial x();
    static Polynomial y();
    static Polynomial monomial(int i, int j, double c = 1.0);

    const std::map<Monomial, double>& coefficients() const { return coeffs_; }
    double coefficient(int i, int j) const;
    bool is_zero() const { return coeffs_.empty(); }
    /// Total degree; -1 for the zero polynomial.
    int degree() const;

    /// Horner evaluation, nested in y inside x.
    double operator()(double x, double y) const;

    Polynomial dx() const;
    Polynomial dy() const;

    /// Restriction to the line x = 0, as coefficients c_j of y^j (dense).
    std::vector<double> on_y_axis() const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(double s);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
    friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

    std::string to_string() const;

private:
    void canonicalize();

    std::map<Monomial, double> coeffs_;
    // Dense rows_[i][j] = coefficient of x^i y^j, rebuilt by canonicalize().
    std::vector<std::vector<double>> rows_;
};

/// Evaluate a dense univariate coefficient vector (c_0 + c_1 t + ...) by Horner.
double horner(const std::vector<double>& c, double t);

/// Coefficients of the derivative of a dense univariate polynomial.
std::vector<double> derivative(const std::vector<double>& c);

/// Polynomial whose coefficients are affine in named parameters:
///   sum over terms c * [param] * x^i y^j, where an empty name means "constant".
/// Substitution maps it to a plain Polynomial; the term structure is fixed at
/// construction so parameter sweeps never rebuild it.
class ParametricPolynomial {
public:
    struct Term {
        int i = 0;
        int j = 0;
        double c = 0.0;
        std::string param;  // empty: plain coefficient
        friend bool operator==(const Term&, const Term&) = default;
    };

    ParametricPolynomial() = default;
    ParametricPolynomial(const Polynomial& p);  // NOLINT: implicit by design of the builders
    explicit ParametricPolynomial(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    std::vector<std::string> parameters() const;

    /// Total substitution; throws ArgumentError if a referenced parameter is missing.
    Polynomial substitute(const std::map<std::string, double>& params) const;

    ParametricPolynomial& add(int i, int j, double c, std::string param = {});

private:
    std::vector<Term> terms_;
};

}  // namespace filippov
