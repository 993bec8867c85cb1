#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qeuclid/rmat.hpp"
#include "qeuclid/scalar.hpp"

namespace qeuclid {

enum class Gen : std::uint8_t {
    Lam,
    LamInv,
    R,
    RInv,
    X0,
    X0Inv,
    Xm,
    Xp,
    Xim,
    Xiz,
    Xip,
    BXim,
    BXiz,
    BXip,
    Alpha,
    AlphaInv,
};

inline constexpr int kGeneratorCount = 16;

struct GeneratorInfo {
    Gen gen;
    const char* token;
    int grading;
    int form_degree;
    bool barred;
    bool invertible;
};

const GeneratorInfo& generator_info(Gen g);
const std::array<GeneratorInfo, kGeneratorCount>& all_generators();

// Form letters: 0..2 are xi^-, xi^0, xi^+; 3..5 their barred partners.
inline constexpr int kFormLetters = 6;
Gen form_letter_gen(int letter);
int form_letter_of(Gen g);  // -1 if g is not a form generator

struct Monomial {
    // Member order fixes the map order used for rendering: forms first, then functions.
    std::uint8_t xi = 0;   // bit i set: xi^i present
    std::uint8_t bxi = 0;  // bit i set: bar xi^i present
    std::int16_t alpha = 0;
    std::int16_t lam = 0;
    std::int16_t rad = 0;
    std::int16_t x0 = 0;
    std::uint16_t xm = 0;
    std::uint16_t xp = 0;

    static Monomial of(Gen g);
    static Monomial forms(int mask) {
        Monomial m;
        m.xi = static_cast<std::uint8_t>(mask & 7);
        m.bxi = static_cast<std::uint8_t>((mask >> 3) & 7);
        return m;
    }
    int form_mask() const { return xi | (bxi << 3); }
    int form_degree() const;
    int grading() const;
    bool is_function() const { return xi == 0 && bxi == 0; }
    bool is_identity() const { return *this == Monomial{}; }
    Monomial function_part() const {
        Monomial m = *this;
        m.xi = m.bxi = 0;
        return m;
    }
    std::string to_string() const;

    auto operator<=>(const Monomial&) const = default;
};

class Element {
public:
    using Terms = std::map<Monomial, Scalar>;

    Element() = default;
    Element(const Scalar& c);
    Element(std::int64_t c) : Element(Scalar(c)) {}
    static Element monomial(const Monomial& m, const Scalar& c = Scalar(1));
    static Element generator(Gen g) { return monomial(Monomial::of(g)); }
    // Drops zero coefficients.
    static Element from_terms(Terms terms);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    void add_term(const Monomial& m, const Scalar& c);
    Scalar coefficient(const Monomial& m) const;

    Element& operator+=(const Element& b);
    Element& operator-=(const Element& b);
    Element operator-() const;
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(const Scalar& c, const Element& a);
    friend bool operator==(const Element& a, const Element& b) = default;

    // Highest form degree among the terms; -1 for zero.
    int max_form_degree() const;
    bool is_function() const;
    // Coefficient function of a single form letter in a 1-form.
    Element letter_coefficient(int letter) const;
    // Part of a 2-form supported on a given form mask, as a function.
    Element mask_coefficient(int mask) const;
    // Keep only terms of the given form degree.
    Element form_degree_part(int degree) const;

    std::string to_string() const;

private:
    Terms terms_;
};

struct AlgebraOptions {
    bool radius_reduction = true;
    // Use Lam xi = xi Lam instead of xi Lam = q Lam xi.
    bool lambda_commutes_with_forms = false;
    // Construction normally runs the associativity sweep and throws on failure.
    bool skip_confluence_check = false;
};

class ConfluenceError : public std::logic_error {
public:
    ConfluenceError(Gen a, Gen b, Gen c);
    std::array<Gen, 3> triple;
};

using TermList = std::vector<std::pair<Monomial, Scalar>>;

// Normal-ordering engine. All tables are built in the constructor and never
// modified afterwards, so a const Algebra can be shared between threads.
class Algebra {
public:
    explicit Algebra(AlgebraOptions opts = {});

    const AlgebraOptions& options() const { return opts_; }
    const Matrix& rhat() const { return rhat_; }
    const Matrix& rhat_inv() const { return rhat_inv_; }
    const IsoMetric& metric() const { return metric_; }
    const ProjectorTrio& projectors() const { return proj_; }

    Element mul(const Element& a, const Element& b) const;
    template <typename... Rest>
    Element mul(const Element& a, const Element& b, const Rest&... rest) const {
        return mul(mul(a, b), rest...);
    }
    Element normalize(const std::vector<Gen>& word, const Scalar& prefactor = Scalar(1)) const;
    Element power(const Element& a, int n) const;
    Element commutator(const Element& a, const Element& b) const { return mul(a, b) - mul(b, a); }
    Element involution(const Element& a) const;

    // Checks (ab)c = a(bc) on every triple of non-central generators.
    // Throws ConfluenceError on the first failing triple.
    void verify_confluence() const;
    std::vector<std::array<Gen, 3>> associativity_failures() const;
    bool associative_on(Gen a, Gen b, Gen c) const;

    // Function monomial times function monomial, accumulated into out with the
    // given form mask attached to every result.
    void function_product(const Monomial& a, const Monomial& b, const Scalar& c, Element::Terms& out,
                          int mask = 0) const;
    // Rules a single letter obeys when moved right past x^l; exposed for tests.
    const TermList& push_rule(int mask, int gen_slot) const { return push_[static_cast<std::size_t>(mask)][static_cast<std::size_t>(gen_slot)]; }
    const TermList& form_rule(int left, int right) const { return forms_[static_cast<std::size_t>(left)][static_cast<std::size_t>(right)]; }

private:
    AlgebraOptions opts_;
    IsoMetric metric_;
    Matrix rhat_;
    Matrix rhat_inv_;
    ProjectorTrio proj_;

    Scalar radius_a_;        // 1 / (s + 1/s)
    Scalar radius_b_plus_;   // coefficient of x0^2 in x+ x-
    Scalar radius_b_minus_;  // coefficient of x0^2 in x- x+

    // push_[mask][slot] = (form word with mask) * y, slot 0..3 = x0, x0^-1, x-, x+.
    std::vector<std::array<TermList, 4>> push_;
    // forms_[a][b] = word a times word b.
    std::vector<std::vector<TermList>> forms_;

    void build_form_table();
    void build_single_letter_rules();
    void build_word_rules();
    void normalize_word(std::vector<int>& word, const Scalar& c, std::map<int, Scalar>& out) const;
    void step_xm(const Monomial& f, const Scalar& c, Element::Terms& out) const;
    void step_xp(const Monomial& f, const Scalar& c, Element::Terms& out) const;
    Element::Terms push_word(int mask, const Monomial& f) const;
    Element::Terms push_through(const Element::Terms& items, int slot) const;
    Element star_monomial(const Monomial& m) const;
};

// Components keyed by (grading degree, form degree).
std::map<std::pair<int, int>, Element> grade_split(const Element& a);

}  // namespace qeuclid
