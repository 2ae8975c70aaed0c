#include "filippov/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "filippov/errors.hpp"

namespace filippov {

Polynomial::Polynomial(double constant) {
    coeffs_[{0, 0}] = constant;
    canonicalize();
}

Polynomial::Polynomial(std::map<Monomial, double> coefficients) : coeffs_(std::move(coefficients)) {
    for (const auto& [m, c] : coeffs_) {
        if (m.first < 0 || m.second < 0) throw ArgumentError("negative exponent in polynomial term");
    }
    canonicalize();
}

Polynomial Polynomial::x() { return monomial(1, 0); }
Polynomial Polynomial::y() { return monomial(0, 1); }

Polynomial Polynomial::monomial(int i, int j, double c) {
    return Polynomial(std::map<Monomial, double>{{{i, j}, c}});
}

double Polynomial::coefficient(int i, int j) const {
    auto it = coeffs_.find({i, j});
    return it == coeffs_.end() ? 0.0 : it->second;
}

int Polynomial::degree() const {
    int d = -1;
    for (const auto& [m, c] : coeffs_) d = std::max(d, m.first + m.second);
    return d;
}

double Polynomial::operator()(double x, double y) const {
    double acc = 0.0;
    for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) acc = acc * x + horner(*it, y);
    return acc;
}

Polynomial Polynomial::dx() const {
    std::map<Monomial, double> out;
    for (const auto& [m, c] : coeffs_) {
        if (m.first > 0) out[{m.first - 1, m.second}] = c * m.first;
    }
    return Polynomial(std::move(out));
}

Polynomial Polynomial::dy() const {
    std::map<Monomial, double> out;
    for (const auto& [m, c] : coeffs_) {
        if (m.second > 0) out[{m.first, m.second - 1}] = c * m.second;
    }
    return Polynomial(std::move(out));
}

std::vector<double> Polynomial::on_y_axis() const {
    std::vector<double> c;
    for (const auto& [m, v] : coeffs_) {
        if (m.first != 0) continue;
        if (c.size() <= static_cast<std::size_t>(m.second)) c.resize(static_cast<std::size_t>(m.second) + 1, 0.0);
        c[static_cast<std::size_t>(m.second)] = v;
    }
    return c;
}

Polynomial Polynomial::operator-() const {
    return *this * -1.0;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    for (const auto& [m, c] : other.coeffs_) coeffs_[m] += c;
    canonicalize();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
    for (const auto& [m, c] : other.coeffs_) coeffs_[m] -= c;
    canonicalize();
    return *this;
}

Polynomial& Polynomial::operator*=(double s) {
    for (auto& [m, c] : coeffs_) c *= s;
    canonicalize();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    std::map<Monomial, double> out;
    for (const auto& [ma, ca] : a.coeffs_) {
        for (const auto& [mb, cb] : b.coeffs_) out[{ma.first + mb.first, ma.second + mb.second}] += ca * cb;
    }
    return Polynomial(std::move(out));
}

std::string Polynomial::to_string() const {
    if (coeffs_.empty()) return "0";
    std::string s;
    char buf[64];
    for (const auto& [m, c] : coeffs_) {
        std::snprintf(buf, sizeof(buf), "%s%.17g", s.empty() ? "" : (c < 0 ? " - " : " + "),
                      s.empty() ? c : std::abs(c));
        s += buf;
        if (m.first > 0) s += m.first == 1 ? "*x" : "*x^" + std::to_string(m.first);
        if (m.second > 0) s += m.second == 1 ? "*y" : "*y^" + std::to_string(m.second);
    }
    return s;
}

void Polynomial::canonicalize() {
    std::erase_if(coeffs_, [](const auto& kv) { return kv.second == 0.0; });
    rows_.clear();
    for (const auto& [m, c] : coeffs_) {
        const auto i = static_cast<std::size_t>(m.first);
        const auto j = static_cast<std::size_t>(m.second);
        if (rows_.size() <= i) rows_.resize(i + 1);
        if (rows_[i].size() <= j) rows_[i].resize(j + 1, 0.0);
        rows_[i][j] = c;
    }
}

double horner(const std::vector<double>& c, double t) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
    return acc;
}

std::vector<double> derivative(const std::vector<double>& c) {
    if (c.size() <= 1) return {};
    std::vector<double> d(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * static_cast<double>(k);
    return d;
}

ParametricPolynomial::ParametricPolynomial(const Polynomial& p) {
    for (const auto& [m, c] : p.coefficients()) terms_.push_back({m.first, m.second, c, {}});
}

ParametricPolynomial::ParametricPolynomial(std::vector<Term> terms) {
    for (auto& t : terms) add(t.i, t.j, t.c, std::move(t.param));
}

ParametricPolynomial& ParametricPolynomial::add(int i, int j, double c, std::string param) {
    if (i < 0 || j < 0) throw ArgumentError("negative exponent in polynomial term");
    if (c == 0.0) return *this;
    for (auto& t : terms_) {
        if (t.i == i && t.j == j && t.param == param) {
            t.c += c;
            std::erase_if(terms_, [](const Term& u) { return u.c == 0.0; });
            return *this;
        }
    }
    terms_.push_back({i, j, c, std::move(param)});
    return *this;
}

std::vector<std::string> ParametricPolynomial::parameters() const {
    std::set<std::string> names;
    for (const auto& t : terms_) {
        if (!t.param.empty()) names.insert(t.param);
    }
    return {names.begin(), names.end()};
}

Polynomial ParametricPolynomial::substitute(const std::map<std::string, double>& params) const {
    std::map<Monomial, double> out;
    for (const auto& t : terms_) {
        double scale = 1.0;
        if (!t.param.empty()) {
            auto it = params.find(t.param);
            if (it == params.end()) throw ArgumentError("parameter '" + t.param + "' has no value");
            scale = it->second;
        }
        out[{t.i, t.j}] += t.c * scale;
    }
    return Polynomial(std::move(out));
}

}  // namespace filippov
