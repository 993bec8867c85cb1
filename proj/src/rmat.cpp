#include "qeuclid/rmat.hpp"

#include <stdexcept>

namespace qeuclid {

std::string index_name(int i) {
    static const char* names[] = {"-", "0", "+"};
    return names[i];
}

Matrix Matrix::identity(int n) {
    Matrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
}

Matrix Matrix::operator*(const Matrix& b) const {
    Matrix r(n_);
    for (int i = 0; i < n_; ++i)
        for (int k = 0; k < n_; ++k) {
            const Scalar& a = (*this)(i, k);
            if (a.is_zero()) continue;
            for (int j = 0; j < n_; ++j) {
                const Scalar& c = b(k, j);
                if (!c.is_zero()) r(i, j) += a * c;
            }
        }
    return r;
}

Matrix Matrix::operator+(const Matrix& b) const {
    Matrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += b.a_[i];
    return r;
}

Matrix Matrix::operator-(const Matrix& b) const {
    Matrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= b.a_[i];
    return r;
}

Matrix Matrix::scaled(const Scalar& k) const {
    Matrix r = *this;
    for (auto& x : r.a_) x *= k;
    return r;
}

bool Matrix::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

Matrix row_echelon(Matrix m) {
    const int n = m.size();
    int row = 0;
    for (int col = 0; col < n && row < n; ++col) {
        int piv = row;
        while (piv < n && m(piv, col).is_zero()) ++piv;
        if (piv == n) continue;
        for (int c = 0; c < n; ++c) std::swap(m(row, c), m(piv, c));
        const Scalar inv = m(row, col).inverse();
        for (int c = 0; c < n; ++c) m(row, c) *= inv;
        for (int r = 0; r < n; ++r) {
            if (r == row || m(r, col).is_zero()) continue;
            const Scalar f = m(r, col);
            for (int c = 0; c < n; ++c)
                if (!m(row, c).is_zero()) m(r, c) -= f * m(row, c);
        }
        ++row;
    }
    return m;
}

int Matrix::rank() const {
    Matrix e = row_echelon(*this);
    int r = 0;
    for (int i = 0; i < n_; ++i) {
        bool nz = false;
        for (int j = 0; j < n_ && !nz; ++j) nz = !e(i, j).is_zero();
        r += nz;
    }
    return r;
}

Matrix Matrix::inverse() const {
    Matrix a = *this;
    Matrix inv = identity(n_);
    for (int col = 0; col < n_; ++col) {
        int piv = col;
        while (piv < n_ && a(piv, col).is_zero()) ++piv;
        if (piv == n_) throw std::domain_error("singular matrix");
        for (int c = 0; c < n_; ++c) {
            std::swap(a(col, c), a(piv, c));
            std::swap(inv(col, c), inv(piv, c));
        }
        const Scalar p = a(col, col).inverse();
        for (int c = 0; c < n_; ++c) {
            a(col, c) *= p;
            inv(col, c) *= p;
        }
        for (int r = 0; r < n_; ++r) {
            if (r == col || a(r, col).is_zero()) continue;
            const Scalar f = a(r, col);
            for (int c = 0; c < n_; ++c) {
                if (!a(col, c).is_zero()) a(r, c) -= f * a(col, c);
                if (!inv(col, c).is_zero()) inv(r, c) -= f * inv(col, c);
            }
        }
    }
    return inv;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    const int na = a.size();
    const int nb = b.size();
    Matrix r(na * nb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j) {
            if (a(i, j).is_zero()) continue;
            for (int k = 0; k < nb; ++k)
                for (int l = 0; l < nb; ++l)
                    if (!b(k, l).is_zero()) r(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
        }
    return r;
}

IsoMetric IsoMetric::standard() {
    IsoMetric g;
    g.lower = Matrix(3);
    g.lower(kMinus, kPlus) = Scalar::s_pow(-1);
    g.lower(kZero, kZero) = Scalar(1);
    g.lower(kPlus, kMinus) = Scalar::s_pow(1);
    g.upper = g.lower;
    return g;
}

Scalar IsoMetric::trace_normalizer() const {
    Scalar t;
    for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n) t += upper(m, n) * lower(m, n);
    return t;
}

const std::vector<XXiRelation>& explicit_x_xi_relations() {
    static const std::vector<XXiRelation> rel = [] {
        const Scalar q = Scalar::q();
        const Scalar h = Scalar::h();
        const Scalar q2m1 = q * q - Scalar(1);
        const Scalar hq1 = h * (q + Scalar(1));
        return std::vector<XXiRelation>{
            {kMinus, kMinus, {{q * q, kMinus, kMinus}}},
            {kZero, kMinus, {{q, kMinus, kZero}}},
            {kPlus, kMinus, {{Scalar(1), kMinus, kPlus}}},
            {kMinus, kZero, {{q, kZero, kMinus}, {q2m1, kMinus, kZero}}},
            {kZero, kZero, {{q, kZero, kZero}, {-hq1, kMinus, kPlus}}},
            {kPlus, kZero, {{q, kZero, kPlus}}},
            {kMinus, kPlus, {{Scalar(1), kPlus, kMinus}, {-hq1, kZero, kZero}, {h * hq1, kMinus, kPlus}}},
            {kZero, kPlus, {{q, kPlus, kZero}, {q2m1, kZero, kPlus}}},
            {kPlus, kPlus, {{q * q, kPlus, kPlus}}},
        };
    }();
    return rel;
}

Matrix build_rhat() {
    Matrix r(9);
    std::array<bool, 81> assigned{};
    const Scalar qinv = Scalar::q_pow(-1);
    for (const auto& rel : explicit_x_xi_relations()) {
        for (const auto& t : rel.rhs) {
            if (rel.i + rel.j != t.k + t.l) throw std::logic_error("relation violates the degree selection rule");
            const int row = pair_index(rel.i, rel.j);
            const int col = pair_index(t.k, t.l);
            const Scalar value = t.coeff * qinv;
            const auto slot = static_cast<std::size_t>(row * 9 + col);
            if (assigned[slot] && !(r(row, col) == value)) throw std::logic_error("inconsistent braid matrix entry");
            assigned[slot] = true;
            r(row, col) = value;
        }
    }
    return r;
}

ProjectorTrio build_projectors(const Matrix& rhat, const IsoMetric& g) {
    ProjectorTrio p;
    p.pt = Matrix(9);
    const Scalar norm = g.trace_normalizer().inverse();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l)
                    p.pt(pair_index(i, j), pair_index(k, l)) = norm * g.upper(i, j) * g.lower(k, l);
    const Scalar q = Scalar::q();
    const Scalar qinv = Scalar::q_pow(-1);
    const Matrix one = Matrix::identity(9);
    // R = q Ps - q^-1 Pa + q^-2 Pt with Ps = 1 - Pa - Pt, solved for Pa.
    p.pa = (one.scaled(q) - rhat + p.pt.scaled(Scalar::q_pow(-2) - q)).scaled((q + qinv).inverse());
    p.ps = one - p.pa - p.pt;
    const Matrix* all[] = {&p.ps, &p.pa, &p.pt};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            const Matrix prod = (*all[a]) * (*all[b]);
            if (!(a == b ? prod == *all[a] : prod.is_zero()))
                throw std::logic_error("projector decomposition is not orthogonal");
        }
    return p;
}

Matrix rhat_inverse_from_projectors(const ProjectorTrio& p) {
    return p.ps.scaled(Scalar::q_pow(-1)) - p.pa.scaled(Scalar::q()) + p.pt.scaled(Scalar::q_pow(2));
}

bool satisfies_braid(const Matrix& m) {
    const Matrix one = Matrix::identity(3);
    const Matrix r12 = kron(m, one);
    const Matrix r23 = kron(one, m);
    return r12 * r23 * r12 == r23 * r12 * r23;
}

bool satisfies_selection_rule(const Matrix& m) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l)
                    if (i + j != k + l && !entry(m, i, j, k, l).is_zero()) return false;
    return true;
}

std::vector<std::string> metric_compatibility_failures(const Matrix& rhat, const Matrix& rhat_inv,
                                                       const IsoMetric& g) {
    std::vector<std::string> failures;
    const Matrix* pm[2][2] = {{&rhat, &rhat_inv}, {&rhat_inv, &rhat}};
    const char* tag[2] = {"R", "R^-1"};
    for (int s = 0; s < 2; ++s) {
        const Matrix& a = *pm[s][0];
        const Matrix& b = *pm[s][1];
        bool lower_ok = true;
        bool upper_ok = true;
        for (int i = 0; i < 3; ++i)
            for (int h = 0; h < 3; ++h)
                for (int j = 0; j < 3; ++j)
                    for (int k = 0; k < 3; ++k) {
                        Scalar lhs, rhs, ulhs, urhs;
                        for (int l = 0; l < 3; ++l) {
                            lhs += g.lower(i, l) * entry(a, l, h, j, k);
                            rhs += entry(b, h, l, i, j) * g.lower(l, k);
                            ulhs += g.upper(i, l) * entry(a, j, k, l, h);
                            urhs += entry(b, i, j, h, l) * g.upper(l, k);
                        }
                        lower_ok = lower_ok && lhs == rhs;
                        upper_ok = upper_ok && ulhs == urhs;
                    }
        if (!lower_ok) failures.push_back(std::string("lower g with ") + tag[s]);
        if (!upper_ok) failures.push_back(std::string("upper g with ") + tag[s]);
    }
    return failures;
}

bool algebra_relations_match_projector(const ProjectorTrio& p) {
    // Explicit relations as vectors over the monomials x^k x^l.
    Matrix rel(9);
    const Scalar q = Scalar::q();
    rel(0, pair_index(kMinus, kZero)) = Scalar(1);
    rel(0, pair_index(kZero, kMinus)) = -q;
    rel(1, pair_index(kPlus, kZero)) = Scalar(1);
    rel(1, pair_index(kZero, kPlus)) = -Scalar::q_pow(-1);
    rel(2, pair_index(kPlus, kMinus)) = Scalar(1);
    rel(2, pair_index(kMinus, kPlus)) = Scalar(-1);
    rel(2, pair_index(kZero, kZero)) = -Scalar::h();
    return row_echelon(rel) == row_echelon(p.pa);
}

}  // namespace qeuclid
