#include "rostforge/fieldext.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

#include "rostforge/errors.hpp"

namespace rostforge {

namespace {

BigInt isqrt(const BigInt& n) {
    if (n.is_negative()) throw std::domain_error("isqrt: negative");
    if (n.is_zero()) return BigInt(0);
    BigInt x = n, y = (n + BigInt(1)) / BigInt(2);
    while (y < x) {
        x = y;
        y = (y + n / y) / BigInt(2);
    }
    return x;
}

std::optional<BigInt> int_sqrt_exact(const BigInt& n) {
    if (n.is_negative()) return std::nullopt;
    BigInt s = isqrt(n);
    if (s * s == n) return s;
    return std::nullopt;
}

}  // namespace

// Prime factorization by trial division. Complete for inputs whose second
// largest prime factor is < 10^6; otherwise throws.
std::vector<std::pair<BigInt, int>> factor_integer(BigInt n) {
    std::vector<std::pair<BigInt, int>> out;
    n = n.abs();
    if (n.is_zero()) throw std::domain_error("factor_integer: zero");
    for (long long d = 2; d <= 1000000; ++d) {
        BigInt bd(d);
        if (bd * bd > n) break;
        int m = 0;
        while ((n % bd).is_zero()) {
            n = n / bd;
            ++m;
        }
        if (m) out.push_back({bd, m});
    }
    if (!n.is_one()) {
        if (n > BigInt::from_string("1000000000000"))
            throw NotComputableError("integer factorization out of trial-division range");
        out.push_back({n, 1});  // no factor <= 1e6, so prime
    }
    return out;
}

namespace {

std::vector<BigInt> all_divisors(const BigInt& n) {
    auto fac = factor_integer(n);
    std::vector<BigInt> divs{BigInt(1)};
    for (const auto& [p, m] : fac) {
        size_t sz = divs.size();
        BigInt pk(1);
        for (int k = 1; k <= m; ++k) {
            pk *= p;
            for (size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * pk);
        }
    }
    return divs;
}

std::vector<Polynomial> enumerate_monic_polys(const FieldPtr& base, int degree) {
    std::vector<Element> elems = all_elements(base);
    std::vector<Polynomial> out;
    std::vector<size_t> idx(degree, 0);
    for (;;) {
        std::vector<Element> coeffs;
        coeffs.reserve(degree + 1);
        for (int i = 0; i < degree; ++i) coeffs.push_back(elems[idx[i]]);
        coeffs.push_back(Element::one(base));
        out.emplace_back(base, std::move(coeffs));
        int i = 0;
        while (i < degree && ++idx[i] == elems.size()) idx[i++] = 0;
        if (i == degree) break;
        if (degree == 0) break;
    }
    return out;
}

// clear denominators: integer coefficient list for a polynomial over Q
std::vector<BigInt> integer_coeffs(const Polynomial& p) {
    BigInt lcm(1);
    for (const auto& c : p.coeffs()) {
        const BigInt& d = c.rat().den();
        lcm = lcm / BigInt::gcd(lcm, d) * d;
    }
    std::vector<BigInt> out;
    for (const auto& c : p.coeffs()) out.push_back(c.rat().num() * (lcm / c.rat().den()));
    return out;
}

std::vector<Element> rational_roots(const Polynomial& p) {
    // roots r/s with r | a0, s | an, after stripping zero roots
    std::vector<Element> roots;
    Polynomial q = p;
    FieldPtr Q = Field::rationals();
    Polynomial x = Polynomial::variable(Q);
    while (!q.is_zero() && q.coeff(0).is_zero()) {
        Element z = Element::zero(Q);
        if (std::find(roots.begin(), roots.end(), z) == roots.end()) roots.push_back(z);
        q = q / x;
    }
    if (q.degree() < 1) return roots;
    auto ic = integer_coeffs(q);
    auto rs = all_divisors(ic.front());
    auto ss = all_divisors(ic.back());
    for (const auto& r : rs)
        for (const auto& s : ss)
            for (int sg : {1, -1}) {
                Element cand = Element::rational(Rational(sg > 0 ? r : -r, s));
                if (q.eval(cand).is_zero() &&
                    std::find(roots.begin(), roots.end(), cand) == roots.end())
                    roots.push_back(cand);
            }
    return roots;
}

// polynomial roots in F_q[t] of a monic polynomial with F_q[t] coefficients
std::vector<Element> function_field_poly_roots(const Polynomial& p, bool& exact) {
    exact = false;
    const FieldPtr& Ft = p.base();
    const FieldPtr& F = Ft->base();
    if (!F->is_finite()) return {};
    if (!p.is_monic()) return {};
    int max_num_deg = 0;
    for (const auto& c : p.coeffs()) {
        if (c.rf_den().degree() != 0) return {};  // non-polynomial coefficient
        max_num_deg = std::max(max_num_deg, c.rf_num().degree());
    }
    // a polynomial root r satisfies deg(r) * (n - i) <= deg c_i for some balance;
    // deg(r) <= max coefficient degree is a safe bound for monic p
    int bound = max_num_deg;
    double count = 1;
    for (int i = 0; i <= bound + 1; ++i) count *= static_cast<double>(F->order());
    if (count > 20000) return {};
    exact = true;
    std::vector<Element> roots;
    std::vector<Element> elems = all_elements(F);
    std::vector<size_t> idx(bound + 1, 0);
    for (;;) {
        std::vector<Element> coeffs;
        for (int i = 0; i <= bound; ++i) coeffs.push_back(elems[idx[i]]);
        Polynomial cand_poly(F, std::move(coeffs));
        Element cand = Element::rational_function(
            Ft, cand_poly, Polynomial::constant(F, Element::one(F)));
        if (p.eval(cand).is_zero()) roots.push_back(cand);
        size_t i = 0;
        while (i < idx.size() && ++idx[i] == elems.size()) idx[i++] = 0;
        if (i == idx.size()) break;
    }
    return roots;
}

}  // namespace

std::vector<Element> all_elements(const FieldPtr& f) {
    if (f->kind() != Field::Kind::Finite)
        throw NotComputableError("element enumeration only over finite fields");
    std::vector<Element> out;
    unsigned e = f->exponent();
    uint64_t p = f->prime();
    std::vector<uint64_t> c(e, 0);
    for (;;) {
        out.push_back(Element::finite(f, c));
        unsigned i = 0;
        while (i < e && ++c[i] == p) c[i++] = 0;
        if (i == e) break;
    }
    return out;
}

bool poly_is_irreducible_over_finite(const Polynomial& p) {
    if (p.degree() < 1) return false;
    if (p.degree() == 1) return true;
    const FieldPtr& base = p.base();
    Polynomial m = p.is_monic() ? p : p.monic();
    for (int d = 1; 2 * d <= m.degree(); ++d)
        for (const auto& cand : enumerate_monic_polys(base, d))
            if ((m % cand).is_zero()) return false;
    return true;
}

Irreducibility check_irreducible(const Polynomial& p) {
    if (p.degree() < 1) return Irreducibility::No;
    if (p.degree() == 1) return Irreducibility::Yes;
    const FieldPtr& base = p.base();
    if (base->is_finite())
        return poly_is_irreducible_over_finite(p) ? Irreducibility::Yes : Irreducibility::No;
    if (base->is_rationals()) {
        if (p.coeff(0).is_zero()) return Irreducibility::No;
        if (!rational_roots(p).empty()) return Irreducibility::No;
        if (p.degree() <= 3) return Irreducibility::Yes;
        // sufficient test: irreducible modulo some small prime not dividing lc
        auto ic = integer_coeffs(p);
        static const long long primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                           43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
        for (long long q : primes) {
            if ((ic.back() % BigInt(q)).is_zero()) continue;
            FieldPtr fq = Field::finite(static_cast<uint64_t>(q));
            std::vector<Element> cs;
            for (const auto& c : ic) cs.push_back(Element::from_integer(fq, c));
            Polynomial pq(fq, std::move(cs));
            if (pq.degree() == p.degree() && poly_is_irreducible_over_finite(pq))
                return Irreducibility::Yes;
        }
        return Irreducibility::Unknown;
    }
    if (base->kind() == Field::Kind::RationalFunction && base->base()->is_finite() &&
        p.degree() <= 3 && p.is_monic()) {
        bool exact = false;
        auto roots = function_field_poly_roots(p, exact);
        if (exact) return roots.empty() ? Irreducibility::Yes : Irreducibility::No;
    }
    return Irreducibility::Unknown;
}

std::vector<Element> poly_roots_in_base(const Polynomial& p) {
    const FieldPtr& base = p.base();
    if (base->is_finite()) {
        std::vector<Element> roots;
        for (const auto& x : all_elements(base))
            if (p.eval(x).is_zero()) roots.push_back(x);
        return roots;
    }
    if (base->is_rationals()) return rational_roots(p);
    if (base->kind() == Field::Kind::RationalFunction) {
        bool exact = false;
        auto roots = function_field_poly_roots(p, exact);
        if (exact) return roots;
    }
    throw NotComputableError("root search unavailable over " + base->to_string());
}

std::vector<std::pair<Polynomial, int>> factor_poly(const Polynomial& p) {
    const FieldPtr& base = p.base();
    if (!base->is_finite())
        throw NotComputableError("polynomial factorization only over finite fields");
    if (p.is_zero()) throw std::domain_error("factor_poly: zero polynomial");
    std::vector<std::pair<Polynomial, int>> out;
    Polynomial rest = p.is_monic() ? p : p.monic();
    // ascending-degree trial division; any degree-d divisor is irreducible
    // once all factors of smaller degree have been removed
    for (int d = 1; rest.degree() >= 2 * d; ++d) {
        for (const auto& cand : enumerate_monic_polys(base, d)) {
            if (rest.degree() < d) break;
            int m = poly_multiplicity(rest, cand);
            if (m > 0) {
                out.push_back({cand, m});
                for (int i = 0; i < m; ++i) rest = rest / cand;
            }
        }
    }
    if (rest.degree() > 0) out.push_back({rest, 1});
    return out;
}

Element resultant(const Polynomial& f, const Polynomial& g) {
    const FieldPtr& base = f.base();
    Element one = Element::one(base);
    if (f.is_zero() || g.is_zero()) return Element::zero(base);
    if (f.degree() == 0) return f.coeff(0).pow(BigInt(g.degree()));
    if (g.degree() == 0) return g.coeff(0).pow(BigInt(f.degree()));
    Polynomial A = f, B = g;
    Element res = one;
    for (;;) {
        if (B.degree() == 0) {
            res = res * B.coeff(0).pow(BigInt(A.degree()));
            return res;
        }
        Polynomial R = A % B;
        if (R.is_zero()) return Element::zero(base);
        long long sign_exp = static_cast<long long>(A.degree()) * B.degree();
        Element sign = (sign_exp % 2 == 0) ? one : -one;
        res = res * sign * B.leading().pow(BigInt(A.degree() - R.degree()));
        A = B;
        B = R;
    }
}

bool has_canonical_embedding(const FieldPtr& from, const FieldPtr& into) {
    if (same_field(from, into)) return true;
    switch (into->kind()) {
        case Field::Kind::RationalFunction:
            if (from->kind() == Field::Kind::RationalFunction && from->variable() == into->variable() &&
                has_canonical_embedding(from->base(), into->base()))
                return true;
            return has_canonical_embedding(from, into->base());
        case Field::Kind::FiniteExtension:
            return has_canonical_embedding(from, into->base());
        case Field::Kind::Finite:
            return from->kind() == Field::Kind::Finite && from->prime() == into->prime() &&
                   into->exponent() % from->exponent() == 0;
        default: return false;
    }
}

namespace {

// image of the generator of F_{p^a} inside F_{p^b}: least root of the modulus
Element subfield_generator_image(const FieldPtr& from, const FieldPtr& into) {
    static std::map<std::pair<std::string, std::string>, Element> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(from->key(), into->key());
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::optional<Element> best;
    for (const auto& x : all_elements(into)) {
        // evaluate the modulus of `from` (prime-field coefficients) at x
        Element acc = Element::zero(into);
        const auto& m = from->modulus();
        for (size_t i = m.size(); i-- > 0;)
            acc = acc * x + Element::from_integer(into, BigInt(static_cast<long long>(m[i])));
        if (acc.is_zero() && (!best || x.key() < best->key())) best = x;
    }
    if (!best) throw std::logic_error("subfield embedding: no root of modulus found");
    cache[key] = *best;
    return *best;
}

}  // namespace

Element embed(const Element& x, const FieldPtr& into) {
    const FieldPtr& from = x.field();
    if (same_field(from, into)) return x;
    switch (into->kind()) {
        case Field::Kind::RationalFunction: {
            if (from->kind() == Field::Kind::RationalFunction && from->variable() == into->variable() &&
                has_canonical_embedding(from->base(), into->base())) {
                auto lift = [&](const Polynomial& p) {
                    std::vector<Element> cs;
                    for (const auto& c : p.coeffs()) cs.push_back(embed(c, into->base()));
                    return Polynomial(into->base(), std::move(cs));
                };
                return Element::rational_function(into, lift(x.rf_num()), lift(x.rf_den()));
            }
            Element c = embed(x, into->base());
            return Element::rational_function(into, Polynomial::constant(into->base(), c),
                                              Polynomial::constant(into->base(), Element::one(into->base())));
        }
        case Field::Kind::FiniteExtension: {
            Element c = embed(x, into->base());
            return Element::algebraic(into, Polynomial::constant(into->base(), c));
        }
        case Field::Kind::Finite: {
            if (from->kind() != Field::Kind::Finite || from->prime() != into->prime() ||
                into->exponent() % from->exponent() != 0)
                throw NotComputableError("no canonical embedding " + from->to_string() + " -> " +
                                         into->to_string());
            if (from->exponent() == 1) return Element::finite(into, x.ff());
            Element theta = subfield_generator_image(from, into);
            Element acc = Element::zero(into);
            const auto& c = x.ff();
            for (size_t i = c.size(); i-- > 0;)
                acc = acc * theta + Element::from_integer(into, BigInt(static_cast<long long>(c[i])));
            return acc;
        }
        default:
            throw NotComputableError("no canonical embedding " + from->to_string() + " -> " +
                                     into->to_string());
    }
}

std::optional<Element> try_sqrt(const Element& x) {
    const FieldPtr& f = x.field();
    if (f->is_rationals()) {
        const Rational& q = x.rat();
        if (q.num().is_negative()) return std::nullopt;
        auto n = int_sqrt_exact(q.num());
        auto d = int_sqrt_exact(q.den());
        if (!n || !d) return std::nullopt;
        return Element::rational(Rational(*n, *d));
    }
    if (f->is_finite()) {
        for (const auto& c : all_elements(f))
            if (c * c == x) return c;
        return std::nullopt;
    }
    if (f->kind() == Field::Kind::FiniteExtension && f->extension_degree() == 2 &&
        f->base()->is_rationals()) {
        // y^2 = alpha*y + beta from the defining polynomial y^2 + c1*y + c0
        FieldPtr Q = f->base();
        Element c1 = f->defining_poly().coeff(1), c0 = f->defining_poly().coeff(0);
        Element alpha = -c1, beta = -c0;
        Element d0 = x.alg_rep().coeff(0), d1 = x.alg_rep().coeff(1);
        Element two = Element::from_integer(Q, BigInt(2));
        Element four = Element::from_integer(Q, BigInt(4));
        auto make = [&](const Element& a, const Element& b) {
            Polynomial rep(Q, {a, b});
            return Element::algebraic(f, rep);
        };
        // b = 0 branch
        if (d1.is_zero()) {
            if (auto a = try_sqrt(d0)) return make(*a, Element::zero(Q));
            // b != 0, d1 = 0: a = -alpha*b/2, b^2*(alpha^2/4 + beta) = d0
            Element denom = alpha * alpha / four + beta;
            if (!denom.is_zero()) {
                if (auto b = try_sqrt(d0 / denom)) {
                    Element a = -alpha * *b / two;
                    Element cand = make(a, *b);
                    if (cand * cand == x) return cand;
                }
            }
            return std::nullopt;
        }
        // b != 0, d1 != 0: (alpha^2+4beta) u^2 - (2 alpha d1 + 4 d0) u + d1^2 = 0, u = b^2
        Element A = alpha * alpha + four * beta;
        Element B = -(two * alpha * d1 + four * d0);
        Element C = d1 * d1;
        std::vector<Element> us;
        if (A.is_zero()) {
            if (!B.is_zero()) us.push_back(-C / B);
        } else {
            Element disc = B * B - four * A * C;
            if (auto sd = try_sqrt(disc)) {
                us.push_back((-B + *sd) / (two * A));
                us.push_back((-B - *sd) / (two * A));
            }
        }
        for (const auto& u : us) {
            if (auto b = try_sqrt(u)) {
                if (b->is_zero()) continue;
                Element a = (d1 - alpha * u) / (two * *b);
                Element cand = make(a, *b);
                if (cand * cand == x) return cand;
            }
        }
        return std::nullopt;
    }
    return std::nullopt;
}

std::optional<std::vector<Element>> linear_solve(std::vector<std::vector<Element>> A,
                                                 std::vector<Element> b) {
    size_t n = A.size();
    for (size_t col = 0, row = 0; col < n && row < n; ++col, ++row) {
        size_t piv = row;
        while (piv < n && A[piv][col].is_zero()) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(A[piv], A[row]);
        std::swap(b[piv], b[row]);
        Element inv = A[row][col].inverse();
        for (size_t j = col; j < n; ++j) A[row][j] = A[row][j] * inv;
        b[row] = b[row] * inv;
        for (size_t i = 0; i < n; ++i) {
            if (i == row || A[i][col].is_zero()) continue;
            Element f = A[i][col];
            for (size_t j = col; j < n; ++j) A[i][j] = A[i][j] - f * A[row][j];
            b[i] = b[i] - f * b[row];
        }
    }
    return b;
}

namespace {

std::optional<BigInt> int_kth_root_exact(const BigInt& n, int k) {
    if (n.is_zero()) return BigInt(0);
    bool neg = n.is_negative();
    if (neg && k % 2 == 0) return std::nullopt;
    BigInt m = n.abs();
    // binary search for the k-th root
    BigInt lo(1), hi = m;
    while (lo <= hi) {
        BigInt mid = (lo + hi) / BigInt(2);
        BigInt p(1);
        bool over = false;
        for (int i = 0; i < k; ++i) {
            p = p * mid;
            if (m < p && i + 1 < k) {
                over = true;
                break;
            }
        }
        if (!over && p == m) return neg ? -mid : mid;
        if (over || m < p)
            hi = mid - BigInt(1);
        else
            lo = mid + BigInt(1);
    }
    return std::nullopt;
}

std::optional<Rational> rational_of(const Element& x) {
    switch (x.field()->kind()) {
        case Field::Kind::Rationals: return x.rat();
        case Field::Kind::FiniteExtension:
            if (x.alg_rep().degree() > 0) return std::nullopt;
            return rational_of(x.alg_rep().coeff(0));
        default: return std::nullopt;
    }
}

}  // namespace

std::optional<std::pair<Element, int>> try_perfect_power(const Element& x) {
    auto q = rational_of(x);
    if (!q || q->is_zero()) return std::nullopt;
    for (int k : {2, 3, 5, 7, 11}) {
        auto rn = int_kth_root_exact(q->num(), k);
        if (!rn) continue;
        auto rd = int_kth_root_exact(q->den(), k);
        if (!rd) continue;
        Rational root(*rn, *rd);
        if (root.is_one() || (root.num() == BigInt(-1) && root.den().is_one())) continue;
        Element r = Element::rational(root);
        if (!same_field(x.field(), Field::rationals())) r = embed(r, x.field());
        return std::pair<Element, int>{r, k};
    }
    return std::nullopt;
}

int count_real_roots(const Polynomial& p) {
    if (!p.base()->is_rationals()) throw std::invalid_argument("count_real_roots: rational polynomials only");
    if (p.degree() < 1) return 0;
    Polynomial sf = p;
    Polynomial g = Polynomial::gcd(sf, sf.derivative());
    if (g.degree() > 0) sf = sf / g;
    // Sturm chain
    std::vector<Polynomial> chain{sf, sf.derivative()};
    while (chain.back().degree() > 0) {
        Polynomial r = chain[chain.size() - 2] % chain.back();
        if (r.is_zero()) break;
        chain.push_back(-r);
    }
    auto sign_at_inf = [](const Polynomial& q, bool plus) {
        if (q.is_zero()) return 0;
        const Rational& lc = q.leading().rat();
        int s = lc.num().is_negative() ? -1 : 1;
        if (!plus && q.degree() % 2 == 1) s = -s;
        return s;
    };
    auto variations = [&](bool plus) {
        int v = 0, prev = 0;
        for (const auto& q : chain) {
            int s = sign_at_inf(q, plus);
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++v;
            prev = s;
        }
        return v;
    };
    return variations(false) - variations(true);
}

std::pair<unsigned, unsigned> signature_of_extension(const Polynomial& f) {
    int r1 = count_real_roots(f);
    int d = f.degree();
    if ((d - r1) % 2 != 0) throw std::logic_error("signature: parity mismatch");
    return {static_cast<unsigned>(r1), static_cast<unsigned>((d - r1) / 2)};
}

}  // namespace rostforge
