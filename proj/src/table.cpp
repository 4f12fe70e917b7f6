#include "limid/table.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

namespace limid {

std::size_t domain_size(const std::vector<int>& cards) {
    std::size_t n = 1;
    for (int c : cards) n *= static_cast<std::size_t>(c);
    return n;
}

Table Table::zeros(std::vector<int> vars, std::vector<int> cards) {
    Table t;
    t.vars = std::move(vars);
    t.cards = std::move(cards);
    t.values.assign(domain_size(t.cards), 0.0);
    return t;
}

Table Table::ones(std::vector<int> vars, std::vector<int> cards) {
    Table t = zeros(std::move(vars), std::move(cards));
    std::fill(t.values.begin(), t.values.end(), 1.0);
    return t;
}

bool Table::has_var(int v) const {
    return std::find(vars.begin(), vars.end(), v) != vars.end();
}

int Table::card_of(int v) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == v) return cards[i];
    throw std::runtime_error("unknown-variable " + std::to_string(v));
}

double Table::at_state(const std::vector<int>& state) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        idx = idx * static_cast<std::size_t>(cards[i]) + static_cast<std::size_t>(state[vars[i]]);
    }
    return values[idx];
}

namespace {

// Strides of each variable of `domain` within `t` (0 when absent).
std::vector<std::size_t> strides_in(const Table& t, const std::vector<int>& domain) {
    std::vector<std::size_t> tstride(t.vars.size());
    std::size_t s = 1;
    for (std::size_t i = t.vars.size(); i-- > 0;) {
        tstride[i] = s;
        s *= static_cast<std::size_t>(t.cards[i]);
    }
    std::vector<std::size_t> out(domain.size(), 0);
    for (std::size_t j = 0; j < domain.size(); ++j) {
        for (std::size_t i = 0; i < t.vars.size(); ++i)
            if (t.vars[i] == domain[j]) out[j] = tstride[i];
    }
    return out;
}

template <typename F>
Table binary_op(const Table& a, const Table& b, F f) {
    Table out;
    out.vars = a.vars;
    out.cards = a.cards;
    for (std::size_t i = 0; i < b.vars.size(); ++i) {
        if (!a.has_var(b.vars[i])) {
            out.vars.push_back(b.vars[i]);
            out.cards.push_back(b.cards[i]);
        }
    }
    out.values.assign(domain_size(out.cards), 0.0);

    const auto sa = strides_in(a, out.vars);
    const auto sb = strides_in(b, out.vars);
    const std::size_t n = out.values.size();
    std::vector<int> digit(out.vars.size(), 0);
    std::size_t ia = 0, ib = 0;
    for (std::size_t k = 0;; ++k) {
        out.values[k] = f(a.values[ia], b.values[ib], k);
        if (k + 1 == n) break;
        for (std::size_t j = out.vars.size(); j-- > 0;) {
            ia += sa[j];
            ib += sb[j];
            if (++digit[j] < out.cards[j]) break;
            ia -= sa[j] * static_cast<std::size_t>(out.cards[j]);
            ib -= sb[j] * static_cast<std::size_t>(out.cards[j]);
            digit[j] = 0;
        }
    }
    return out;
}

}  // namespace

Table t_multiply(const Table& a, const Table& b, OpCounter& ctr) {
    Table out = binary_op(a, b, [](double x, double y, std::size_t) { return x * y; });
    ctr.mults += static_cast<long long>(out.size());
    return out;
}

Table t_add(const Table& a, const Table& b, OpCounter& ctr) {
    Table out = binary_op(a, b, [](double x, double y, std::size_t) { return x + y; });
    ctr.sums += static_cast<long long>(out.size());
    return out;
}

Table t_subtract(const Table& a, const Table& b, OpCounter& ctr) {
    Table out = binary_op(a, b, [](double x, double y, std::size_t) { return x - y; });
    ctr.subs += static_cast<long long>(out.size());
    return out;
}

Table t_divide(const Table& a, const Table& b, OpCounter& ctr) {
    Table out = binary_op(a, b, [](double x, double y, std::size_t k) {
        if (y == 0.0) {
            if (x == 0.0) return 0.0;
            throw DivisionByZeroError(k);
        }
        return x / y;
    });
    ctr.divs += static_cast<long long>(out.size());
    return out;
}

Table t_sum_out(const Table& t, const std::vector<int>& elim, OpCounter& ctr) {
    for (int v : elim)
        if (!t.has_var(v)) throw std::runtime_error("unknown-variable " + std::to_string(v));
    if (elim.empty()) return t;

    Table out;
    std::vector<int> evars, ecards;
    for (std::size_t i = 0; i < t.vars.size(); ++i) {
        if (std::find(elim.begin(), elim.end(), t.vars[i]) == elim.end()) {
            out.vars.push_back(t.vars[i]);
            out.cards.push_back(t.cards[i]);
        } else {
            evars.push_back(t.vars[i]);
            ecards.push_back(t.cards[i]);
        }
    }
    out.values.assign(domain_size(out.cards), 0.0);

    const auto skept = strides_in(t, out.vars);
    const auto selim = strides_in(t, evars);
    const std::size_t nk = out.values.size();
    const std::size_t ne = domain_size(ecards);

    std::vector<int> kd(out.vars.size(), 0);
    std::size_t base = 0;
    for (std::size_t k = 0;; ++k) {
        std::vector<int> ed(evars.size(), 0);
        std::size_t off = 0;
        double acc = t.values[base];
        for (std::size_t e = 1; e < ne; ++e) {
            for (std::size_t j = evars.size(); j-- > 0;) {
                off += selim[j];
                if (++ed[j] < ecards[j]) break;
                off -= selim[j] * static_cast<std::size_t>(ecards[j]);
                ed[j] = 0;
            }
            acc += t.values[base + off];
        }
        out.values[k] = acc;
        if (k + 1 == nk) break;
        for (std::size_t j = out.vars.size(); j-- > 0;) {
            base += skept[j];
            if (++kd[j] < out.cards[j]) break;
            base -= skept[j] * static_cast<std::size_t>(out.cards[j]);
            kd[j] = 0;
        }
    }
    if (ne > 1) ctr.sums += static_cast<long long>((ne - 1) * nk);
    return out;
}

ArgmaxTable t_argmax_over(const Table& t, int d) {
    if (!t.has_var(d)) throw std::runtime_error("unknown-variable " + std::to_string(d));
    ArgmaxTable out;
    std::vector<int> dvar{d};
    for (std::size_t i = 0; i < t.vars.size(); ++i) {
        if (t.vars[i] != d) {
            out.vars.push_back(t.vars[i]);
            out.cards.push_back(t.cards[i]);
        }
    }
    const int dc = t.card_of(d);
    const auto skept = strides_in(t, out.vars);
    const auto sd = strides_in(t, dvar);
    const std::size_t nk = domain_size(out.cards);
    out.indices.assign(nk, 0);

    std::vector<int> kd(out.vars.size(), 0);
    std::size_t base = 0;
    for (std::size_t k = 0;; ++k) {
        int best = 0;
        double bestv = t.values[base];
        for (int x = 1; x < dc; ++x) {
            double v = t.values[base + sd[0] * static_cast<std::size_t>(x)];
            if (v > bestv) {
                bestv = v;
                best = x;
            }
        }
        out.indices[k] = best;
        if (k + 1 == nk) break;
        for (std::size_t j = out.vars.size(); j-- > 0;) {
            base += skept[j];
            if (++kd[j] < out.cards[j]) break;
            base -= skept[j] * static_cast<std::size_t>(out.cards[j]);
            kd[j] = 0;
        }
    }
    return out;
}

Table t_expand(const Table& t, const std::vector<int>& vars, const std::vector<int>& cards) {
    Table target = Table::ones(vars, cards);
    OpCounter scratch;
    Table out = binary_op(t, target, [](double x, double y, std::size_t) { return x * y; });
    (void)scratch;
    return out;
}

}  // namespace limid
