#include "rostforge/points.hpp"

#include <stdexcept>

#include "rostforge/errors.hpp"
#include "rostforge/fieldext.hpp"

namespace rostforge {

namespace {

void affine_points_finite(const FieldPtr& line, int bound, std::vector<Valuation>& out) {
    const FieldPtr& base = line->base();
    std::vector<Element> elems = all_elements(base);
    for (int d = 1; d <= bound; ++d) {
        std::vector<size_t> idx(d, 0);
        for (;;) {
            std::vector<Element> coeffs;
            for (int i = 0; i < d; ++i) coeffs.push_back(elems[idx[i]]);
            coeffs.push_back(Element::one(base));
            Polynomial cand(base, std::move(coeffs));
            if (poly_is_irreducible_over_finite(cand)) out.push_back(Valuation::point_of_line(line, cand));
            int i = 0;
            while (i < d && ++idx[i] == elems.size()) idx[i++] = 0;
            if (i == d) break;
        }
    }
}

void affine_points_rational(const FieldPtr& line, int bound, int height, std::vector<Valuation>& out) {
    FieldPtr Q = Field::rationals();
    for (int d = 1; d <= bound; ++d) {
        std::vector<long long> c(d, -height);
        for (;;) {
            std::vector<long long> coeffs(c.begin(), c.end());
            coeffs.push_back(1);
            Polynomial cand = Polynomial::from_int_coeffs(Q, coeffs);
            if (check_irreducible(cand) == Irreducibility::Yes)
                out.push_back(Valuation::point_of_line(line, cand));
            int i = 0;
            while (i < d && ++c[i] > height) c[i++] = -height;
            if (i == d) break;
        }
    }
}

}  // namespace

std::vector<Valuation> closed_points(LineKind kind, const FieldPtr& line, int degree_bound,
                                     int height_bound) {
    if (line->kind() != Field::Kind::RationalFunction)
        throw std::invalid_argument("closed_points: field is not F(t)");
    if (degree_bound < 1) throw std::invalid_argument("closed_points: bound must be >= 1");
    const FieldPtr& base = line->base();
    std::vector<Valuation> out;
    if (base->is_finite())
        affine_points_finite(line, degree_bound, out);
    else if (base->is_rationals())
        affine_points_rational(line, degree_bound, height_bound, out);
    else
        throw NotComputableError("closed_points: unsupported base field " + base->to_string());
    if (kind == LineKind::Projective) out.push_back(Valuation::infinite_place(line));
    return out;
}

unsigned kronecker_dimension(const FieldPtr& f) {
    auto trdeg = f->transcendence_degree();
    if (!trdeg)
        throw std::invalid_argument("kronecker_dimension: infinite transcendence degree");
    return f->characteristic() == 0 ? *trdeg + 1 : *trdeg;
}

}  // namespace rostforge
