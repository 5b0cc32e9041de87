#include "fepr/two_sat.hpp"

#include <algorithm>
#include <stdexcept>

namespace fepr {

namespace {

int node(Literal l) { return 2 * l.var + (l.value ? 0 : 1); }

}  // namespace

std::optional<std::vector<bool>> solve_2sat(const TwoSatFormula& f) {
    const int nv = f.num_vars;
    const int nn = 2 * nv;
    std::vector<int> head(nn, -1), nxt, to;
    nxt.reserve(f.clauses.size() * 2);
    to.reserve(f.clauses.size() * 2);
    auto add_arc = [&](int a, int b) {
        to.push_back(b);
        nxt.push_back(head[a]);
        head[a] = static_cast<int>(to.size()) - 1;
    };
    for (auto [a, b] : f.clauses) {
        if (a.var < 0 || a.var >= nv || b.var < 0 || b.var >= nv) throw std::out_of_range("literal out of range");
        add_arc(node(!a), node(b));
        add_arc(node(!b), node(a));
    }

    // Iterative Tarjan; components come out in reverse topological order.
    std::vector<int> index(nn, -1), low(nn, 0), comp(nn, -1), stack, call, edge_it(nn);
    std::vector<char> on_stack(nn, 0);
    int counter = 0, comps = 0;
    for (int s = 0; s < nn; ++s) {
        if (index[s] >= 0) continue;
        call.push_back(s);
        index[s] = low[s] = counter++;
        stack.push_back(s);
        on_stack[s] = 1;
        edge_it[s] = head[s];
        while (!call.empty()) {
            int v = call.back();
            int& e = edge_it[v];
            if (e >= 0) {
                int w = to[e];
                e = nxt[e];
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    edge_it[w] = head[w];
                    call.push_back(w);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                for (;;) {
                    int w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = comps;
                    if (w == v) break;
                }
                ++comps;
            }
            call.pop_back();
            if (!call.empty()) low[call.back()] = std::min(low[call.back()], low[v]);
        }
    }
    std::vector<bool> value(nv);
    for (int x = 0; x < nv; ++x) {
        int t = comp[2 * x], fl = comp[2 * x + 1];
        if (t == fl) return std::nullopt;
        value[x] = t < fl;  // the literal whose component is later in topological order
    }
    return value;
}

}  // namespace fepr
