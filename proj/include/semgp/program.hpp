#ifndef SEMGP_PROGRAM_HPP
#define SEMGP_PROGRAM_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semgp/common.hpp"

namespace semgp {

enum class Op : std::uint8_t { Add, Sub, Mul, Div, Feature, Constant };

struct Node {
    Op op = Op::Constant;
    std::uint32_t feature = 0;
    double value = 0.0;

    [[nodiscard]] auto is_function() const -> bool { return op < Op::Feature; }

    static auto function(Op op) -> Node { return { op, 0, 0.0 }; }
    static auto variable(std::uint32_t k) -> Node { return { Op::Feature, k, 0.0 }; }
    static auto constant(double v) -> Node { return { Op::Constant, 0, v }; }

    auto operator==(Node const&) const -> bool = default;
};

// Expression tree stored as a prefix-order node sequence. Every function is
// binary, so the subtree rooted at i occupies [i, subtree_end(i)).
class Program {
public:
    Program() = default;
    explicit Program(std::vector<Node> nodes);

    [[nodiscard]] auto nodes() const -> std::span<Node const> { return nodes_; }
    [[nodiscard]] auto size() const -> std::size_t { return nodes_.size(); }
    [[nodiscard]] auto operator[](std::size_t i) const -> Node const& { return nodes_[i]; }

    [[nodiscard]] auto subtree_end(std::size_t i) const -> std::size_t;
    // Depth counts edges: a lone terminal has depth 0.
    [[nodiscard]] auto depth() const -> std::size_t;
    // Distance of each node from the root.
    [[nodiscard]] auto levels() const -> std::vector<std::size_t>;

    [[nodiscard]] auto subtree(std::size_t i) const -> Program;
    // Copy with the subtree at i replaced by `replacement`.
    [[nodiscard]] auto replace(std::size_t i, Program const& replacement) const -> Program;

    // Prefix text, e.g. "(+ x0 (* 0.5 x1))".
    [[nodiscard]] auto to_string() const -> std::string;
    static auto parse(std::string_view text) -> Program;

    auto operator==(Program const&) const -> bool = default;

private:
    std::vector<Node> nodes_;
};

auto node_count(Program const& p) -> std::size_t;

} // namespace semgp

#endif
