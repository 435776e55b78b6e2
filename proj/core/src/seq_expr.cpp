#include "semihilbert/seq_expr.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "semihilbert/errors.hpp"

namespace semihilbert {

class SeqExpr::Node {
public:
    enum class Kind { number, var_n, imag_unit, pi, negate, add, sub, mul, div, pow, call };

    Kind kind;
    double number = 0.0;
    std::string func; // for call
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;

    Complex eval(long n) const {
        switch (kind) {
            case Kind::number: return Complex(number, 0.0);
            case Kind::var_n: return Complex(static_cast<double>(n), 0.0);
            case Kind::imag_unit: return Complex(0.0, 1.0);
            case Kind::pi: return Complex(std::numbers::pi, 0.0);
            case Kind::negate: return -lhs->eval(n);
            case Kind::add: return lhs->eval(n) + rhs->eval(n);
            case Kind::sub: return lhs->eval(n) - rhs->eval(n);
            case Kind::mul: return lhs->eval(n) * rhs->eval(n);
            case Kind::div: {
                const Complex d = rhs->eval(n);
                if (std::abs(d) == 0.0) {
                    throw ModelError("division by zero at n = " + std::to_string(n));
                }
                return lhs->eval(n) / d;
            }
            case Kind::pow: return std::pow(lhs->eval(n), rhs->eval(n));
            case Kind::call: {
                const Complex v = lhs->eval(n);
                if (func == "exp") return std::exp(v);
                if (func == "sin") return std::sin(v);
                if (func == "cos") return std::cos(v);
                if (func == "sqrt") return std::sqrt(v);
                if (func == "conj") return std::conj(v);
                return Complex(std::abs(v), 0.0); // abs
            }
        }
        return Complex(0.0);
    }

    void print(std::ostream& out) const {
        switch (kind) {
            case Kind::number: {
                std::ostringstream tmp;
                tmp.precision(17);
                tmp << number;
                out << tmp.str();
                return;
            }
            case Kind::var_n: out << "n"; return;
            case Kind::imag_unit: out << "i"; return;
            case Kind::pi: out << "pi"; return;
            case Kind::negate:
                out << "(-";
                lhs->print(out);
                out << ")";
                return;
            case Kind::add:
            case Kind::sub:
            case Kind::mul:
            case Kind::div:
            case Kind::pow: {
                const char* op = kind == Kind::add   ? "+"
                                 : kind == Kind::sub ? "-"
                                 : kind == Kind::mul ? "*"
                                 : kind == Kind::div ? "/"
                                                     : "^";
                out << "(";
                lhs->print(out);
                out << op;
                rhs->print(out);
                out << ")";
                return;
            }
            case Kind::call:
                out << func << "(";
                lhs->print(out);
                out << ")";
                return;
        }
    }
};

namespace {

using Node = SeqExpr::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make_node(Node::Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    NodePtr run() {
        NodePtr e = expression();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("parse error at position " + std::to_string(pos_) + ": " + why, pos_);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool consume(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    NodePtr expression() {
        NodePtr lhs = term();
        while (true) {
            if (consume('+')) {
                lhs = make_node(Node::Kind::add, lhs, term());
            } else if (consume('-')) {
                lhs = make_node(Node::Kind::sub, lhs, term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        while (true) {
            if (consume('*')) {
                lhs = make_node(Node::Kind::mul, lhs, unary());
            } else if (consume('/')) {
                lhs = make_node(Node::Kind::div, lhs, unary());
            } else {
                return lhs;
            }
        }
    }

    NodePtr unary() {
        if (consume('-')) return make_node(Node::Kind::negate, unary());
        return power();
    }

    NodePtr power() {
        NodePtr base = atom();
        if (consume('^')) {
            // Right associative; the exponent may itself carry a sign.
            return make_node(Node::Kind::pow, base, unary());
        }
        return base;
    }

    NodePtr atom() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        if (consume('(')) {
            NodePtr e = expression();
            if (!consume(')')) fail("expected ')'");
            return e;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    NodePtr number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    ++pos_;
            } else {
                pos_ = mark; // not an exponent after all
            }
        }
        const std::string token = text_.substr(start, pos_ - start);
        if (token.empty() || token == ".") fail("malformed number");
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::number;
        n->number = std::stod(token);
        return n;
    }

    NodePtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::string name = text_.substr(start, pos_ - start);
        if (name == "n") return make_node(Node::Kind::var_n);
        if (name == "i") return make_node(Node::Kind::imag_unit);
        if (name == "pi") return make_node(Node::Kind::pi);
        if (name == "exp" || name == "sin" || name == "cos" || name == "sqrt" || name == "conj" ||
            name == "abs") {
            if (!consume('(')) fail("expected '(' after function name");
            NodePtr arg = expression();
            if (!consume(')')) fail("expected ')'");
            auto node = std::make_shared<Node>();
            node->kind = Node::Kind::call;
            node->func = name;
            node->lhs = std::move(arg);
            return node;
        }
        pos_ = start;
        fail("unknown identifier '" + name + "'");
    }
};

} // namespace

SeqExpr::SeqExpr(std::shared_ptr<const Node> root, std::string source)
    : root_(std::move(root)), source_(std::move(source)) {}

SeqExpr SeqExpr::parse(const std::string& text) {
    if (text.size() > 4096) throw ParseError("expression exceeds 4 KiB", 4096);
    Parser parser(text);
    return SeqExpr(parser.run(), text);
}

Complex SeqExpr::eval(long n) const { return root_->eval(n); }

std::string SeqExpr::canonical() const {
    std::ostringstream out;
    root_->print(out);
    return out.str();
}

} // namespace semihilbert
