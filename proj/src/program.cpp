#include "semgp/program.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cctype>

namespace semgp {

namespace {

auto symbol(Op op) -> char
{
    switch (op) {
    case Op::Add: return '+';
    case Op::Sub: return '-';
    case Op::Mul: return '*';
    case Op::Div: return '/';
    default: return '?';
    }
}

void append_double(std::string& out, double v)
{
    std::array<char, 32> buf {};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    out.append(buf.data(), ptr);
}

class Parser {
public:
    explicit Parser(std::string_view text)
        : text_(text)
    {
    }

    auto run() -> std::vector<Node>
    {
        parse_node();
        skip_space();
        if (pos_ != text_.size()) {
            fail("trailing characters");
        }
        return std::move(nodes_);
    }

private:
    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    [[noreturn]] void fail(std::string const& what) const
    {
        throw Error("program parse error at offset " + std::to_string(pos_) + ": " + what);
    }

    auto token() -> std::string_view
    {
        skip_space();
        auto const start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '('
               && text_[pos_] != ')') {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected a token");
        }
        return text_.substr(start, pos_ - start);
    }

    void parse_node()
    {
        skip_space();
        if (pos_ >= text_.size()) {
            fail("unexpected end of input");
        }
        if (text_[pos_] == '(') {
            ++pos_;
            auto const name = token();
            Op op {};
            if (name == "+") {
                op = Op::Add;
            } else if (name == "-") {
                op = Op::Sub;
            } else if (name == "*") {
                op = Op::Mul;
            } else if (name == "/") {
                op = Op::Div;
            } else {
                fail("unknown function '" + std::string(name) + "'");
            }
            nodes_.push_back(Node::function(op));
            parse_node();
            parse_node();
            skip_space();
            if (pos_ >= text_.size() || text_[pos_] != ')') {
                fail("expected ')'");
            }
            ++pos_;
            return;
        }
        auto const tok = token();
        if (tok.size() > 1 && tok.front() == 'x') {
            std::uint32_t k = 0;
            auto [ptr, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), k);
            if (ec != std::errc {} || ptr != tok.data() + tok.size()) {
                fail("bad feature reference '" + std::string(tok) + "'");
            }
            nodes_.push_back(Node::variable(k));
            return;
        }
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc {} || ptr != tok.data() + tok.size()) {
            fail("bad constant '" + std::string(tok) + "'");
        }
        nodes_.push_back(Node::constant(v));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::vector<Node> nodes_;
};

} // namespace

Program::Program(std::vector<Node> nodes)
    : nodes_(std::move(nodes))
{
    if (nodes_.empty() || subtree_end(0) != nodes_.size()) {
        throw Error("malformed program: node sequence is not a single complete tree");
    }
}

auto Program::subtree_end(std::size_t i) const -> std::size_t
{
    std::size_t open = 1;
    while (open > 0) {
        if (i >= nodes_.size()) {
            throw Error("malformed program: truncated subtree");
        }
        // a binary function fills one slot and opens two
        if (nodes_[i].is_function()) {
            ++open;
        } else {
            --open;
        }
        ++i;
    }
    return i;
}

auto Program::levels() const -> std::vector<std::size_t>
{
    std::vector<std::size_t> level(nodes_.size(), 0);
    // stack of levels awaiting a child
    std::vector<std::size_t> pending;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (i > 0) {
            level[i] = pending.back() + 1;
            pending.pop_back();
        }
        if (nodes_[i].is_function()) {
            pending.push_back(level[i]);
            pending.push_back(level[i]);
        }
    }
    return level;
}

auto Program::depth() const -> std::size_t
{
    auto const lv = levels();
    return lv.empty() ? 0 : *std::max_element(lv.begin(), lv.end());
}

auto Program::subtree(std::size_t i) const -> Program
{
    auto const end = subtree_end(i);
    return Program(std::vector<Node>(nodes_.begin() + static_cast<std::ptrdiff_t>(i),
        nodes_.begin() + static_cast<std::ptrdiff_t>(end)));
}

auto Program::replace(std::size_t i, Program const& replacement) const -> Program
{
    auto const end = subtree_end(i);
    std::vector<Node> out;
    out.reserve(nodes_.size() - (end - i) + replacement.size());
    out.insert(out.end(), nodes_.begin(), nodes_.begin() + static_cast<std::ptrdiff_t>(i));
    out.insert(out.end(), replacement.nodes_.begin(), replacement.nodes_.end());
    out.insert(out.end(), nodes_.begin() + static_cast<std::ptrdiff_t>(end), nodes_.end());
    Program p;
    p.nodes_ = std::move(out);
    return p;
}

auto Program::to_string() const -> std::string
{
    std::string out;
    std::vector<std::size_t> remaining; // children still to print per open function
    for (auto const& n : nodes_) {
        if (!remaining.empty()) {
            out += ' ';
        }
        if (n.is_function()) {
            out += '(';
            out += symbol(n.op);
            remaining.push_back(2);
            continue;
        }
        if (n.op == Op::Feature) {
            out += 'x';
            out += std::to_string(n.feature);
        } else {
            append_double(out, n.value);
        }
        while (!remaining.empty() && --remaining.back() == 0) {
            out += ')';
            remaining.pop_back();
        }
    }
    return out;
}

auto Program::parse(std::string_view text) -> Program
{
    return Program(Parser(text).run());
}

auto node_count(Program const& p) -> std::size_t
{
    return p.size();
}

} // namespace semgp
