#include "monop/funcexpr.hpp"

#include "monop/errors.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cmath>
#include <cstdio>
#include <functional>

namespace monop {

struct FuncExpr::Node {
    enum class Kind { Literal, Var, Add, Sub, Mul, Div, Neg, Pow, Involute };

    Kind kind;
    std::size_t offset = 0;  // operator position in the source, for diagnostics
    Complex value{};         // Literal
    double exponent = 0.0;   // Pow
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

namespace {

using Node = FuncExpr::Node;
using NodePtr = std::shared_ptr<const Node>;
using Kind = Node::Kind;

constexpr int kMaxDepth = 200;
constexpr double kPoleThreshold = 1e-300;
constexpr double kMaxIntegerExponent = 1024.0;

NodePtr make_node(Kind kind, std::size_t offset, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->offset = offset;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

NodePtr make_literal(Complex v, std::size_t offset) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Literal;
    n->offset = offset;
    n->value = v;
    return n;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }

const std::vector<std::string> kBaseStart = {"number", "'s'", "'i'", "'('", "'involute'"};

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse_all() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail({"operator", "end of input"}, "unexpected character");
        return e;
    }

private:
    [[noreturn]] void fail(std::vector<std::string> expected, const std::string& detail) {
        throw ParseError(pos_, std::move(expected), detail);
    }

    void skip_ws() {
        while (pos_ < text_.size() &&
               (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r'))
            ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    void expect(char c) {
        if (!peek(c)) fail({std::string("'") + c + "'"}, "");
        ++pos_;
    }

    struct DepthGuard {
        explicit DepthGuard(Parser& p) : p(p) {
            if (++p.depth_ > kMaxDepth) p.fail({}, "expression nested too deeply");
        }
        ~DepthGuard() { --p.depth_; }
        Parser& p;
    };

    // Scans an unsigned real literal at pos_. Returns false (pos_ unchanged)
    // when no digits are present.
    bool number(double& out) {
        skip_ws();
        const std::size_t start = pos_;
        std::size_t p = pos_;
        std::size_t digits = 0;
        while (p < text_.size() && is_digit(text_[p])) ++p, ++digits;
        if (p < text_.size() && text_[p] == '.') {
            ++p;
            while (p < text_.size() && is_digit(text_[p])) ++p, ++digits;
        }
        if (digits == 0) return false;
        if (p < text_.size() && (text_[p] == 'e' || text_[p] == 'E')) {
            std::size_t q = p + 1;
            if (q < text_.size() && (text_[q] == '+' || text_[q] == '-')) ++q;
            if (q < text_.size() && is_digit(text_[q])) {
                while (q < text_.size() && is_digit(text_[q])) ++q;
                p = q;
            }
        }
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + p, v);
        if (ec != std::errc() || ptr != text_.data() + p || !std::isfinite(v))
            fail({}, "numeric literal out of range");
        out = v;
        pos_ = p;
        return true;
    }

    bool signed_number(double& out) {
        skip_ws();
        const std::size_t save = pos_;
        double sign = 1.0;
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
            if (text_[pos_] == '-') sign = -1.0;
            ++pos_;
        }
        if (!number(out)) {
            pos_ = save;
            return false;
        }
        out = sign * out;
        return true;
    }

    NodePtr expr() {
        DepthGuard guard(*this);
        NodePtr lhs = term();
        while (true) {
            skip_ws();
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
                const std::size_t at = pos_;
                const Kind k = text_[pos_] == '+' ? Kind::Add : Kind::Sub;
                ++pos_;
                lhs = make_node(k, at, lhs, term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        while (true) {
            skip_ws();
            if (pos_ < text_.size() && (text_[pos_] == '*' || text_[pos_] == '/')) {
                const std::size_t at = pos_;
                const Kind k = text_[pos_] == '*' ? Kind::Mul : Kind::Div;
                ++pos_;
                lhs = make_node(k, at, lhs, unary());
            } else {
                return lhs;
            }
        }
    }

    NodePtr unary() {
        DepthGuard guard(*this);
        skip_ws();
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
            const std::size_t at = pos_;
            const bool neg = text_[pos_] == '-';
            ++pos_;
            NodePtr operand = unary();
            return neg ? make_node(Kind::Neg, at, operand) : operand;
        }
        return factor();
    }

    NodePtr factor() {
        NodePtr b = base();
        if (peek('^')) {
            const std::size_t at = pos_;
            ++pos_;
            double e = 0.0;
            if (peek('(')) {
                ++pos_;
                if (!signed_number(e)) fail({"real exponent"}, "");
                expect(')');
            } else if (!signed_number(e)) {
                fail({"real exponent"}, "");
            }
            auto n = std::make_shared<Node>();
            n->kind = Kind::Pow;
            n->offset = at;
            n->lhs = b;
            n->exponent = e;
            return n;
        }
        return b;
    }

    NodePtr base() {
        skip_ws();
        const std::size_t at = pos_;
        if (pos_ >= text_.size()) fail(kBaseStart, "unexpected end of input");
        const char c = text_[pos_];
        double v = 0.0;
        if (is_digit(c) || c == '.') {
            if (!number(v)) fail(kBaseStart, "malformed number");
            return make_literal({v, 0.0}, at);
        }
        if (is_alpha(c)) {
            std::size_t p = pos_;
            while (p < text_.size() && (is_alpha(text_[p]) || is_digit(text_[p]))) ++p;
            const std::string_view ident = text_.substr(pos_, p - pos_);
            if (ident == "s") {
                pos_ = p;
                return make_node(Kind::Var, at);
            }
            if (ident == "i") {
                pos_ = p;
                return make_literal({0.0, 1.0}, at);
            }
            if (ident == "involute") {
                pos_ = p;
                expect('(');
                NodePtr inner = expr();
                expect(')');
                return make_node(Kind::Involute, at, inner);
            }
            fail(kBaseStart, "unknown identifier '" + std::string(ident) + "'");
        }
        if (c == '(') {
            ++pos_;
            // Complex literal "(re,im)"?
            const std::size_t save = pos_;
            double re = 0.0;
            if (signed_number(re) && peek(',')) {
                ++pos_;
                double im = 0.0;
                if (!signed_number(im)) fail({"number"}, "");
                expect(')');
                return make_literal({re, im}, at);
            }
            pos_ = save;
            NodePtr inner = expr();
            expect(')');
            return inner;
        }
        fail(kBaseStart, "unexpected character");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int depth_ = 0;
};

// --- evaluation -----------------------------------------------------------

bool is_pole(const Complex& d) { return std::abs(d) < kPoleThreshold; }
bool is_pole(const BigComplex& d) { return !(std::sqrt(norm(d).to_double()) >= kPoleThreshold); }

bool is_zero(const Complex& z) { return z == Complex(0.0, 0.0); }
bool is_zero(const BigComplex& z) { return z.re.is_zero() && z.im.is_zero(); }

Complex principal_pow(const Complex& x, double w) { return std::exp(w * std::log(x)); }
BigComplex principal_pow(const BigComplex& x, double w) {
    const BigReal e(w, x.precision());
    BigComplex l = log(x);
    return exp(BigComplex(l.re * e, l.im * e));
}

template <class Scalar>
Scalar integer_pow(Scalar x, long n) {
    Scalar result = lift(1.0, x);
    while (n > 0) {
        if (n & 1) result *= x;
        n >>= 1;
        if (n) x *= x;
    }
    return result;
}

template <class Scalar>
Scalar eval_node(const Node& n, const Scalar& s) {
    switch (n.kind) {
        case Kind::Literal:
            return lift(n.value, s);
        case Kind::Var:
            return s;
        case Kind::Add:
            return eval_node(*n.lhs, s) + eval_node(*n.rhs, s);
        case Kind::Sub:
            return eval_node(*n.lhs, s) - eval_node(*n.rhs, s);
        case Kind::Mul:
            return eval_node(*n.lhs, s) * eval_node(*n.rhs, s);
        case Kind::Div: {
            const Scalar num = eval_node(*n.lhs, s);
            const Scalar den = eval_node(*n.rhs, s);
            if (is_pole(den)) throw PoleError(n.offset, to_complex(s));
            return num / den;
        }
        case Kind::Neg:
            return -eval_node(*n.lhs, s);
        case Kind::Pow: {
            const Scalar x = eval_node(*n.lhs, s);
            const double w = n.exponent;
            if (w == std::floor(w) && std::abs(w) <= kMaxIntegerExponent) {
                const long k = static_cast<long>(w);
                if (k >= 0) return integer_pow(x, k);
                const Scalar d = integer_pow(x, -k);
                if (is_pole(d)) throw PoleError(n.offset, to_complex(s));
                return lift(1.0, s) / d;
            }
            if (is_zero(x)) {
                if (w > 0.0) return lift(0.0, s);
                throw PoleError(n.offset, to_complex(s));
            }
            return principal_pow(x, w);
        }
        case Kind::Involute:
            return conj_of(eval_node(*n.lhs, conj_of(s)));
    }
    throw EvalError("corrupt expression tree");
}

// --- printing -------------------------------------------------------------

void print_node(const Node& n, std::string& out) {
    auto binary = [&](char op) {
        out += '(';
        print_node(*n.lhs, out);
        out += op;
        print_node(*n.rhs, out);
        out += ')';
    };
    switch (n.kind) {
        case Kind::Literal: {
            const double re = n.value.real();
            const double im = n.value.imag();
            if (im == 0.0 && !std::signbit(im) && !std::signbit(re)) {
                out += format_double(re);
            } else {
                out += '(' + format_double(re) + ',' + format_double(im) + ')';
            }
            return;
        }
        case Kind::Var:
            out += 's';
            return;
        case Kind::Add:
            return binary('+');
        case Kind::Sub:
            return binary('-');
        case Kind::Mul:
            return binary('*');
        case Kind::Div:
            return binary('/');
        case Kind::Neg:
            out += "(-";
            print_node(*n.lhs, out);
            out += ')';
            return;
        case Kind::Pow:
            out += '(';
            print_node(*n.lhs, out);
            out += '^';
            out += format_double(n.exponent);
            out += ')';
            return;
        case Kind::Involute:
            out += "involute(";
            print_node(*n.lhs, out);
            out += ')';
            return;
    }
}

bool same(const Node* a, const Node* b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Kind::Literal: {
            // Bitwise, so that signed zeros count.
            const auto bits = [](double x) { return std::bit_cast<std::uint64_t>(x); };
            return bits(a->value.real()) == bits(b->value.real()) && bits(a->value.imag()) == bits(b->value.imag());
        }
        case Kind::Var:
            return true;
        case Kind::Pow:
            return std::bit_cast<std::uint64_t>(a->exponent) == std::bit_cast<std::uint64_t>(b->exponent) &&
                   same(a->lhs.get(), b->lhs.get());
        default:
            return same(a->lhs.get(), b->lhs.get()) && same(a->rhs.get(), b->rhs.get());
    }
}

bool contains_var(const Node& n) {
    if (n.kind == Kind::Var) return true;
    return (n.lhs && contains_var(*n.lhs)) || (n.rhs && contains_var(*n.rhs));
}

}  // namespace

FuncExpr FuncExpr::parse(std::string_view text) { return FuncExpr(Parser(text).parse_all()); }

Complex FuncExpr::eval(Complex s) const { return eval_node(*root_, s); }
BigComplex FuncExpr::eval(const BigComplex& s) const { return eval_node(*root_, s); }

std::string FuncExpr::print() const {
    std::string out;
    print_node(*root_, out);
    return out;
}

FuncExpr FuncExpr::involute() const {
    if (root_->kind == Kind::Involute) return FuncExpr(root_->lhs);
    return FuncExpr(make_node(Kind::Involute, root_->offset, root_));
}

bool FuncExpr::same_tree(const FuncExpr& other) const { return same(root_.get(), other.root_.get()); }

std::vector<Complex> FuncExpr::affine_singularities() const {
    std::vector<Complex> zeros;
    // Zero of the sub-expression if it is affine in s (checked at four points).
    auto affine_zero = [&](const Node& n, bool conjugated) -> bool {
        if (!contains_var(n)) return true;
        try {
            auto f = [&](Complex s) { return conjugated ? std::conj(eval_node(n, std::conj(s))) : eval_node(n, s); };
            const Complex f0 = f(0.0), f1 = f(1.0), f2 = f(2.0), fi = f(Complex(0.0, 1.0));
            const Complex slope = f1 - f0;
            const double scale = std::abs(f0) + std::abs(f1) + 1.0;
            if (std::abs(slope) < 1e-14 * scale) return false;
            if (std::abs(f2 - 2.0 * f1 + f0) > 1e-12 * scale) return false;
            if (std::abs(fi - (f0 + Complex(0.0, 1.0) * slope)) > 1e-12 * scale) return false;
            zeros.push_back(-f0 / slope);
            return true;
        } catch (const EvalError&) {
            return false;
        }
    };
    // Denominators that are products or positive powers of affine factors.
    std::function<void(const Node&, bool)> factor_zeros = [&](const Node& n, bool conjugated) {
        if (affine_zero(n, conjugated)) return;
        if (n.kind == Kind::Mul) {
            factor_zeros(*n.lhs, conjugated);
            factor_zeros(*n.rhs, conjugated);
        } else if (n.kind == Kind::Neg || (n.kind == Kind::Pow && n.exponent > 0.0)) {
            factor_zeros(*n.lhs, conjugated);
        } else if (n.kind == Kind::Involute) {
            factor_zeros(*n.lhs, !conjugated);
        }
    };
    std::function<void(const Node&, bool)> walk = [&](const Node& n, bool conjugated) {
        if (n.kind == Kind::Div) factor_zeros(*n.rhs, conjugated);
        if (n.kind == Kind::Pow && (n.exponent < 0.0 || n.exponent != std::floor(n.exponent)))
            factor_zeros(*n.lhs, conjugated);
        const bool inner = n.kind == Kind::Involute ? !conjugated : conjugated;
        if (n.lhs) walk(*n.lhs, inner);
        if (n.rhs) walk(*n.rhs, inner);
    };
    walk(*root_, false);
    return zeros;
}

}  // namespace monop
