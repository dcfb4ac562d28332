#include "curvegap/poly_curve.hpp"

#include "curvegap/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace curvegap {

Polynomial::Polynomial(std::span<const i64> coefficients, const PrimeModulus& modulus) : modulus_(modulus) {
    coeffs_.reserve(coefficients.size());
    for (i64 c : coefficients) coeffs_.push_back(modulus_.reduce(c));
    trim();
}

Polynomial::Polynomial(std::vector<u64> canonical, const PrimeModulus& modulus)
    : modulus_(modulus), coeffs_(std::move(canonical)) {
    for (auto& c : coeffs_) c = modulus_.reduce_u(c);
    trim();
}

Polynomial Polynomial::parse(const std::string& text, const PrimeModulus& modulus) {
    std::vector<i64> cs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        i64 v = 0;
        try {
            v = std::stoll(item, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad polynomial coefficient '" + item + "'");
        }
        if (item.find_first_not_of(" \t", used) != std::string::npos)
            throw std::invalid_argument("bad polynomial coefficient '" + item + "'");
        cs.push_back(v);
    }
    if (cs.empty()) throw std::invalid_argument("empty polynomial");
    return Polynomial(cs, modulus);
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

u64 Polynomial::operator()(u64 x) const noexcept {
    u64 acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = modulus_.add(modulus_.mul(acc, x), *it);
    return acc;
}

Residue Polynomial::operator()(const Residue& x) const {
    if (!(x.modulus() == modulus_)) throw ModulusMismatch(x.modulus().value(), modulus_.value());
    return Residue::from_canonical((*this)(x.value()), modulus_);
}

Polynomial Polynomial::derivative() const {
    std::vector<u64> d;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(modulus_.mul(coeffs_[i], modulus_.reduce_u(i)));
    return Polynomial(std::move(d), modulus_);
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    u64 li = modulus_.inv(leading());
    std::vector<u64> c(coeffs_);
    for (auto& v : c) v = modulus_.mul(v, li);
    return Polynomial(std::move(c), modulus_);
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    const auto& m = a.modulus_;
    std::vector<u64> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        u64 x = i < a.coeffs_.size() ? a.coeffs_[i] : 0;
        u64 y = i < b.coeffs_.size() ? b.coeffs_[i] : 0;
        c[i] = m.add(x, y);
    }
    return Polynomial(std::move(c), m);
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    const auto& m = a.modulus_;
    std::vector<u64> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        u64 x = i < a.coeffs_.size() ? a.coeffs_[i] : 0;
        u64 y = i < b.coeffs_.size() ? b.coeffs_[i] : 0;
        c[i] = m.sub(x, y);
    }
    return Polynomial(std::move(c), m);
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    const auto& m = a.modulus_;
    if (a.is_zero() || b.is_zero()) return Polynomial(m);
    std::vector<u64> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] = m.add(c[i + j], m.mul(a.coeffs_[i], b.coeffs_[j]));
    return Polynomial(std::move(c), m);
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor) const {
    if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
    const auto& m = modulus_;
    std::vector<u64> rem(coeffs_);
    const int dd = divisor.degree();
    if (degree() < dd) return {Polynomial(m), *this};
    std::vector<u64> quot(static_cast<std::size_t>(degree() - dd + 1), 0);
    const u64 lead_inv = m.inv(divisor.leading());
    for (int i = degree(); i >= dd; --i) {
        u64 c = m.mul(rem[static_cast<std::size_t>(i)], lead_inv);
        quot[static_cast<std::size_t>(i - dd)] = c;
        if (c == 0) continue;
        for (int j = 0; j <= dd; ++j) {
            auto& r = rem[static_cast<std::size_t>(i - dd + j)];
            r = m.sub(r, m.mul(c, divisor.coeffs_[static_cast<std::size_t>(j)]));
        }
    }
    return {Polynomial(std::move(quot), m), Polynomial(std::move(rem), m)};
}

std::string Polynomial::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        if (coeffs_[i] == 0) continue;
        if (!out.empty()) out += " + ";
        if (coeffs_[i] != 1 || i == 0) out += std::to_string(coeffs_[i]);
        if (i > 0) out += (coeffs_[i] != 1 ? "*x" : "x");
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
}

Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        Polynomial r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

SquarefreeDecomposition squarefree_decomposition(const Polynomial& f) {
    const auto& m = f.modulus();
    if (f.is_zero()) return {0, {}};
    if (static_cast<u64>(f.degree()) >= m.value())
        throw std::invalid_argument("squarefree decomposition needs deg f < p");

    SquarefreeDecomposition out{f.leading(), {}};
    const Polynomial one(std::vector<u64>{1}, m);
    Polynomial g = f.monic();
    if (g.degree() == 0) return out;

    Polynomial dg = g.derivative();
    Polynomial a = gcd(g, dg);
    Polynomial b = g.divmod(a).first;
    Polynomial c = dg.divmod(a).first;
    Polynomial d = c - b.derivative();
    while (!(b == one)) {
        Polynomial ai = gcd(b, d);
        b = b.divmod(ai).first;
        c = d.divmod(ai).first;
        d = c - b.derivative();
        out.factors.push_back(std::move(ai));
    }
    return out;
}

namespace {

// Returns g with f = c * g^2 when every multiplicity is even.
std::optional<Polynomial> square_root_factor(const Polynomial& f) {
    const auto& m = f.modulus();
    if (f.is_zero()) return Polynomial(m);
    auto dec = squarefree_decomposition(f);
    Polynomial root(std::vector<u64>{1}, m);
    for (std::size_t i = 0; i < dec.factors.size(); ++i) {
        const auto& a = dec.factors[i];
        if (a.degree() <= 0) continue;
        const std::size_t mult = i + 1;
        if (mult % 2 == 1) return std::nullopt;
        for (std::size_t k = 0; k < mult / 2; ++k) root = root * a;
    }
    return root;
}

} // namespace

bool is_square_in_closure(const Polynomial& f) { return square_root_factor(f).has_value(); }

SquarePolynomial::SquarePolynomial(const Polynomial& f, const Polynomial& root)
    : std::invalid_argument("f is a square: " + f.to_string() + " = c * (" + root.to_string() + ")^2"),
      certificate_(root.to_string()) {}

HyperellipticCurve::HyperellipticCurve(Polynomial f) : f_(std::move(f)) {
    const int d = f_.degree();
    if (d < 1) throw std::invalid_argument("curve polynomial must have degree >= 1");
    if (static_cast<u64>(d) >= f_.modulus().value())
        throw std::invalid_argument("curve polynomial degree must be below p");
    if (auto root = square_root_factor(f_)) throw SquarePolynomial(f_, *root);
}

u64 affine_point_count(const HyperellipticCurve& curve, unsigned threads) {
    const auto& m = curve.modulus();
    auto partial = map_chunks(curve.p(), threads, [&](u64 begin, u64 end) {
        u64 n = 0;
        for (u64 x = begin; x < end; ++x) n += static_cast<u64>(1 + m.legendre(curve.f()(x)));
        return n;
    });
    return std::accumulate(partial.begin(), partial.end(), u64{0});
}

Interval Interval::parse(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("interval must be lo:hi, got '" + text + "'");
    try {
        std::size_t u1 = 0, u2 = 0;
        std::string a = text.substr(0, colon), b = text.substr(colon + 1);
        if (a.empty() || b.empty() || a[0] == '-' || b[0] == '-') throw std::invalid_argument("");
        u64 lo = std::stoull(a, &u1), hi = std::stoull(b, &u2);
        if (u1 != a.size() || u2 != b.size() || lo > hi) throw std::invalid_argument("");
        return {lo, hi};
    } catch (const std::exception&) {
        throw std::invalid_argument("interval must be lo:hi with 0 <= lo <= hi, got '" + text + "'");
    }
}

void Interval::check_within(u64 bound, const char* what) const {
    if (lo > hi || hi > bound)
        throw std::invalid_argument(std::string(what) + " [" + std::to_string(lo) + "," + std::to_string(hi) +
                                    ") must lie within [0," + std::to_string(bound) + ")");
}

XCoordinateSet::XCoordinateSet(const HyperellipticCurve& curve, Interval interval, std::vector<CurvePoint> entries)
    : curve_(curve), interval_(interval), entries_(std::move(entries)) {}

std::optional<u64> XCoordinateSet::y_at(u64 x) const noexcept {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), x,
                               [](const CurvePoint& pt, u64 v) { return pt.x < v; });
    if (it == entries_.end() || it->x != x) return std::nullopt;
    return it->y;
}

std::vector<u64> XCoordinateSet::xs() const {
    std::vector<u64> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.x);
    return out;
}

XCoordinateSet compute_S_I(const HyperellipticCurve& curve, Interval interval, unsigned threads) {
    const auto& m = curve.modulus();
    interval.check_within(m.half() + 1, "interval I");
    auto chunks = map_chunks(curve.p(), threads, [&](u64 begin, u64 end) {
        std::vector<CurvePoint> pts;
        if (interval.empty()) return pts;
        for (u64 x = begin; x < end; ++x) {
            auto y = m.sqrt(curve.f()(x));
            if (y && interval.contains(*y)) pts.push_back({x, *y});
        }
        return pts;
    });
    std::vector<CurvePoint> all;
    for (auto& c : chunks) all.insert(all.end(), c.begin(), c.end());
    return XCoordinateSet(curve, interval, std::move(all));
}

CardinalityDeviation cardinality_deviation(const XCoordinateSet& s) {
    const double p = static_cast<double>(s.p());
    const double d = s.curve().degree();
    const double lp = std::log(p);
    return {s.size(), s.interval().size(), 4.0 * d * (d - 1.0) * std::sqrt(p) * lp * lp};
}

} // namespace curvegap
