#pragma once

// Sparse multivariate polynomials with graded-lexicographic monomial order.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace mopf::poly {

/// Exponent vector of a single monomial over a fixed set of variables.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(int num_vars) : exp_(static_cast<size_t>(num_vars), 0) {}
    Monomial(std::initializer_list<uint8_t> e) : exp_(e) {}
    explicit Monomial(std::vector<uint8_t> e) : exp_(std::move(e)) {}

    int num_vars() const { return static_cast<int>(exp_.size()); }
    int degree() const {
        int d = 0;
        for (auto e : exp_) d += e;
        return d;
    }
    uint8_t operator[](int i) const { return exp_[static_cast<size_t>(i)]; }
    uint8_t& operator[](int i) { return exp_[static_cast<size_t>(i)]; }

    Monomial operator+(const Monomial& o) const {
        if (exp_.size() != o.exp_.size())
            throw std::invalid_argument("monomial variable count mismatch");
        Monomial r(*this);
        for (size_t i = 0; i < exp_.size(); ++i) r.exp_[i] = static_cast<uint8_t>(exp_[i] + o.exp_[i]);
        return r;
    }
    bool operator==(const Monomial& o) const { return exp_ == o.exp_; }

    /// Graded lex: lower degree first; ties broken lexicographically with
    /// earlier variables ranked higher (so V_d1^2 precedes V_d1*V_d2).
    bool grlex_less(const Monomial& o) const {
        int da = degree(), db = o.degree();
        if (da != db) return da < db;
        return exp_ > o.exp_;  // larger leading exponent sorts earlier
    }

    const std::vector<uint8_t>& exponents() const { return exp_; }

    std::string to_string() const {
        std::string s;
        for (size_t i = 0; i < exp_.size(); ++i) {
            if (exp_[i] == 0) continue;
            if (!s.empty()) s += "*";
            s += "x" + std::to_string(i);
            if (exp_[i] > 1) s += "^" + std::to_string(int(exp_[i]));
        }
        return s.empty() ? "1" : s;
    }

private:
    std::vector<uint8_t> exp_;
};

struct MonomialHash {
    size_t operator()(const Monomial& m) const {
        size_t h = 1469598103934665603ull;
        for (auto e : m.exponents()) {
            h ^= e;
            h *= 1099511628211ull;
        }
        return h;
    }
};

/// Sparse polynomial: map from monomial to real coefficient. Canonical form
/// stores no zero coefficients.
class Polynomial {
public:
    using TermMap = std::unordered_map<Monomial, double, MonomialHash>;

    Polynomial() = default;
    explicit Polynomial(int num_vars) : nvars_(num_vars) {}

    static Polynomial constant(int num_vars, double c) {
        Polynomial p(num_vars);
        if (c != 0.0) p.terms_.emplace(Monomial(num_vars), c);
        return p;
    }
    static Polynomial variable(int num_vars, int index, int power = 1) {
        Polynomial p(num_vars);
        Monomial m(num_vars);
        m[index] = static_cast<uint8_t>(power);
        p.terms_.emplace(std::move(m), 1.0);
        return p;
    }

    int num_vars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    int degree() const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
        return d;
    }

    double coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? 0.0 : it->second;
    }

    void add_term(const Monomial& m, double c) {
        if (m.num_vars() != nvars_)
            throw std::invalid_argument("polynomial variable count mismatch");
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (c != 0.0) terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0.0) terms_.erase(it);
        }
    }

    Polynomial operator+(const Polynomial& o) const {
        check_same_vars(o);
        Polynomial r(*this);
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }
    Polynomial operator-(const Polynomial& o) const {
        check_same_vars(o);
        Polynomial r(*this);
        for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
        return r;
    }
    Polynomial operator*(const Polynomial& o) const {
        check_same_vars(o);
        Polynomial r(nvars_);
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_) r.add_term(ma + mb, ca * cb);
        return r;
    }
    Polynomial scaled(double s) const {
        Polynomial r(nvars_);
        if (s == 0.0) return r;
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * s);
        return r;
    }
    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }

    double evaluate(const std::vector<double>& point) const {
        if (static_cast<int>(point.size()) != nvars_)
            throw std::invalid_argument("evaluation point dimension mismatch");
        double total = 0;
        for (const auto& [m, c] : terms_) {
            double t = c;
            for (int i = 0; i < nvars_; ++i)
                for (int k = 0; k < m[i]; ++k) t *= point[static_cast<size_t>(i)];
            total += t;
        }
        return total;
    }

private:
    void check_same_vars(const Polynomial& o) const {
        if (nvars_ != o.nvars_)
            throw std::invalid_argument("polynomial variable count mismatch");
    }

    int nvars_ = 0;
    TermMap terms_;
};

inline Polynomial operator*(double s, const Polynomial& p) { return p.scaled(s); }

}  // namespace mopf::poly
