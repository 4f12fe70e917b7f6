#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace limid {

// Counts scalar arithmetic actually executed during a solve. A k-term
// summation costs k-1 sums; 0/0 costs one division; broadcasting costs
// nothing.
struct OpCounter {
    long long sums = 0;
    long long mults = 0;
    long long divs = 0;
    long long subs = 0;

    long long total() const { return sums + mults + divs + subs; }

    OpCounter& operator+=(const OpCounter& o) {
        sums += o.sums;
        mults += o.mults;
        divs += o.divs;
        subs += o.subs;
        return *this;
    }
};

struct DivisionByZeroError : std::runtime_error {
    std::size_t cell;
    explicit DivisionByZeroError(std::size_t c)
        : std::runtime_error("divide-nonzero-by-zero at cell " + std::to_string(c)), cell(c) {}
};

// Dense real function over an ordered list of finite discrete variables.
// Layout is row-major with the last variable's index varying fastest.
// An empty domain is a single scalar cell.
struct Table {
    std::vector<int> vars;   // variable ids, no duplicates
    std::vector<int> cards;  // parallel cardinalities
    std::vector<double> values;

    Table() : values(1, 0.0) {}

    static Table scalar(double v) {
        Table t;
        t.values[0] = v;
        return t;
    }

    static Table zeros(std::vector<int> vars, std::vector<int> cards);
    static Table ones(std::vector<int> vars, std::vector<int> cards);

    std::size_t size() const { return values.size(); }
    bool is_scalar() const { return vars.empty(); }
    bool has_var(int v) const;
    int card_of(int v) const;

    // Value at the cell selected by a dense full-state vector indexed by
    // variable id. Pure indexing, never counted.
    double at_state(const std::vector<int>& state) const;
};

std::size_t domain_size(const std::vector<int>& cards);

Table t_multiply(const Table& a, const Table& b, OpCounter& ctr);
Table t_add(const Table& a, const Table& b, OpCounter& ctr);
Table t_subtract(const Table& a, const Table& b, OpCounter& ctr);
// Per-cell division with the 0/0 = 0 convention; nonzero/0 throws.
Table t_divide(const Table& a, const Table& b, OpCounter& ctr);

Table t_sum_out(const Table& t, const std::vector<int>& elim, OpCounter& ctr);

struct ArgmaxTable {
    std::vector<int> vars;   // dom t minus the maximized variable
    std::vector<int> cards;
    std::vector<int> indices;  // smallest maximizing index per configuration
};

ArgmaxTable t_argmax_over(const Table& t, int d);

// Uncounted domain extension; used only where the contract says
// broadcasting is free (building vacuous potentials and fixtures).
Table t_expand(const Table& t, const std::vector<int>& vars, const std::vector<int>& cards);

}  // namespace limid
