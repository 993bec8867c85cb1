#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qeuclid/ncalg.hpp"

namespace qeuclid {

// Lexical, syntactic and evaluation errors; offset is a byte position in the input.
class ExprError : public std::runtime_error {
public:
    ExprError(const std::string& what, std::size_t offset);
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

struct Ast {
    enum class Kind { number, symbol, neg, add, sub, mul, div, pow };

    Kind kind = Kind::number;
    std::string text;   // digits or token
    int exponent = 0;   // for pow
    std::size_t offset = 0;
    std::vector<Ast> args;

    // Fully parenthesized form, for debugging and tests.
    std::string to_string() const;
};

// Tokens: xm xz xp xzinv r rinv Lam Laminv alpha alphainv xim xiz xip bxim bxiz bxip q sqrtq h i,
// unsigned integers, + - * / ^ ( ). Exponents are integers, optionally negative or parenthesized.
Ast parse(std::string_view text);

// a + i b with a, b in the algebra; i is central.
struct ComplexElement {
    Element re;
    Element im;

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    friend bool operator==(const ComplexElement&, const ComplexElement&) = default;
};

ComplexElement evaluate(const Algebra& alg, const Ast& ast);
// Parses and evaluates; the result must be real.
Element parse_element(const Algebra& alg, std::string_view text);
// A real constant, or nothing.
std::optional<Scalar> as_scalar(const ComplexElement& e);

std::string render(const Element& e);
std::string render(const ComplexElement& e);

}  // namespace qeuclid
