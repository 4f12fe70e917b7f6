#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "limid/generate.hpp"
#include "limid/io.hpp"
#include "limid/oracle.hpp"
#include "limid/spu.hpp"

namespace {

using namespace limid;

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string name_of(const Limid& m, int id) { return m.variable(id).name; }

std::string join_names(const Limid& m, const std::vector<int>& ids) {
    std::string s;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) s += ' ';
        s += name_of(m, ids[i]);
    }
    return s;
}

void dump_jt(std::ostream& out, const Limid& m, const JunctionTree& jt) {
    for (std::size_t c = 0; c < jt.cliques.size(); ++c)
        out << "clique " << c << ": " << join_names(m, jt.cliques[c]) << "\n";
    for (std::size_t e = 0; e < jt.edges.size(); ++e)
        out << "edge " << jt.edges[e].a << " -- " << jt.edges[e].b << " sep: "
            << join_names(m, jt.edges[e].separator) << "\n";
    for (std::size_t c = 0; c < jt.cliques.size(); ++c) {
        for (int r : jt.chance_in_clique[c])
            out << "cpt " << name_of(m, r) << " -> clique " << c << "\n";
        for (int u : jt.values_in_clique[c])
            out << "value " << m.values[u].name << " -> clique " << c << "\n";
    }
    const std::vector<int> decisions = m.decision_order();
    for (std::size_t i = 0; i < decisions.size(); ++i)
        out << "home " << name_of(m, decisions[i]) << " -> clique " << jt.decision_home[i]
            << "\n";
}

void print_strategy(std::ostream& out, const Limid& m, const Strategy& q) {
    for (int d : m.decision_order()) {
        const Policy& pol = q.policies.at(d);
        const std::vector<int>& vars = pol.table.vars;  // parents then d
        out << "decision " << name_of(m, d);
        if (vars.size() > 1) {
            out << " | ";
            for (std::size_t i = 0; i + 1 < vars.size(); ++i)
                out << (i ? " " : "") << name_of(m, vars[i]);
        }
        out << "\n";
        const int card = pol.table.cards.back();
        const std::size_t rows = pol.table.size() / card;
        std::vector<int> state(vars.size() - 1, 0);
        for (std::size_t r = 0; r < rows; ++r) {
            out << "  ";
            for (std::size_t i = 0; i + 1 < vars.size(); ++i)
                out << name_of(m, vars[i]) << "=" << state[i] << " ";
            int choice = 0;
            for (int s = 0; s < card; ++s)
                if (pol.table.values[r * card + s] == 1.0) choice = s;
            out << "-> " << choice << "\n";
            for (int i = static_cast<int>(state.size()) - 1; i >= 0; --i) {
                if (++state[i] < pol.table.cards[i]) break;
                state[i] = 0;
            }
        }
    }
}

void print_counter_text(std::ostream& out, const char* phase, const OpCounter& c) {
    out << phase << " sums=" << c.sums << " mults=" << c.mults << " divs=" << c.divs
        << " subs=" << c.subs << " total=" << c.total() << "\n";
}

void csv_row(std::ostream& out, const std::string& label, const OpCounter& c) {
    out << label << "," << c.sums << "," << c.mults << "," << c.divs << "," << c.subs << ","
        << c.total() << "\n";
}

int cmd_compile(const std::string& path, bool dump) {
    Limid m = load_limid(path);
    Limid reduced = reduce(m);
    JunctionTree jt = compile_limid(reduced);
    if (dump) dump_jt(std::cout, reduced, jt);
    std::cout << "ok: " << jt.cliques.size() << " cliques, " << jt.edges.size() << " edges\n";
    return 0;
}

int cmd_solve(const std::string& path, const std::string& arch_s, bool general,
              const std::string& report, bool want_jt, const std::string& out_path) {
    Limid m = load_limid(path);
    Arch arch = arch_s == "ss" ? Arch::SS : arch_s == "hugin" ? Arch::Hugin : Arch::LP;
    SolveResult res = general ? spu_general(m, arch) : solve_soluble(m, arch);

    std::ostringstream out;
    if (want_jt) {
        Limid reduced = reduce(m);
        dump_jt(out, reduced, compile_limid(reduced));
    }
    if (report == "csv") {
        out << "Phase,Sums,Mults,Divs,Subs,Total\n";
        csv_row(out, "init", res.counters.init);
        csv_row(out, "solve", res.counters.solve);
        csv_row(out, "readout", res.counters.readout);
        out << "eu," << num(res.eu) << "\n";
        out << "messages," << res.counters.messages << "\n";
        out << "iterations," << res.iterations << "\n";
    } else {
        print_strategy(out, reduce(m), res.strategy);
        out << "EU = " << num(res.eu) << "\n";
        out << "arch " << arch_name(arch) << ", messages " << res.counters.messages
            << ", iterations " << res.iterations << "\n";
        print_counter_text(out, "init", res.counters.init);
        print_counter_text(out, "solve", res.counters.solve);
        print_counter_text(out, "readout", res.counters.readout);
    }
    if (out_path.empty()) {
        std::cout << out.str();
    } else {
        std::ofstream f(out_path, std::ios::binary);
        f << out.str();
    }
    return 0;
}

int cmd_compare(const std::string& path) {
    Limid m = load_limid(path);
    SolveResult ss = solve_soluble(m, Arch::SS);
    SolveResult hugin = solve_soluble(m, Arch::Hugin);
    SolveResult lp = solve_soluble(m, Arch::LP);

    for (const SolveResult* other : {&hugin, &lp}) {
        for (const auto& [d, pol] : ss.strategy.policies) {
            if (other->strategy.policies.at(d).table.values != pol.table.values) {
                std::cerr << "strategy-disagreement: decision " << name_of(m, d) << "\n";
                return 4;
            }
        }
    }
    std::cout << "Algorithm,Sums,Mults,Divs,Subs,Total\n";
    OpCounter s1 = ss.counters.solve;
    s1 += ss.counters.readout;
    OpCounter s2 = hugin.counters.solve;
    s2 += hugin.counters.readout;
    OpCounter s3 = lp.counters.solve;
    s3 += lp.counters.readout;
    csv_row(std::cout, "S-S", s1);
    csv_row(std::cout, "HUGIN", s2);
    csv_row(std::cout, "LP", s3);
    csv_row(std::cout, "Init S-S/HUGIN", ss.counters.init);
    csv_row(std::cout, "Init LP", lp.counters.init);
    std::cout << "eu," << num(ss.eu) << "\n";
    return 0;
}

int cmd_gen(const std::string& out_path, const GenParams& params) {
    Limid m = generate_limid(params);
    if (out_path == "-")
        std::cout << serialize_limid(m);
    else
        save_limid(m, out_path);
    return 0;
}

int cmd_oracle(const std::string& path, std::size_t cap) {
    Limid m = load_limid(path);
    oracle::Options opt;
    if (cap) opt.cell_cap = cap;
    oracle::OptimalResult best = oracle::brute_optimal(m, opt);
    print_strategy(std::cout, m, best.strategy);
    std::cout << "EU = " << num(best.eu) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LIMID junction-tree solver"};
    app.require_subcommand(1);

    std::string in_path, out_path, arch = "ss", report = "text";
    bool dump = false, general = false, dump_jt_flag = false;
    std::size_t cap = 0;
    GenParams gp;

    auto* compile_cmd = app.add_subcommand("compile", "compile a model to a junction tree");
    compile_cmd->add_option("input", in_path)->required();
    compile_cmd->add_flag("--dump", dump, "print cliques, separators and assignments");

    auto* solve_cmd = app.add_subcommand("solve", "solve by message passing");
    solve_cmd->add_option("input", in_path)->required();
    solve_cmd->add_option("--arch", arch)->check(CLI::IsMember({"ss", "hugin", "lp"}));
    solve_cmd->add_flag("--general", general, "iterate policy updates to convergence");
    solve_cmd->add_option("--report", report)->check(CLI::IsMember({"text", "csv"}));
    solve_cmd->add_flag("--dump-jt", dump_jt_flag);
    solve_cmd->add_option("-o,--output", out_path);

    auto* compare_cmd = app.add_subcommand("compare", "operation counts per architecture");
    compare_cmd->add_option("input", in_path)->required();

    auto* gen_cmd = app.add_subcommand("gen", "generate a seeded random model");
    gen_cmd->add_option("output", out_path)->required();
    gen_cmd->add_option("--seed", gp.seed);
    gen_cmd->add_option("--chance", gp.n_chance)->check(CLI::Range(0, 64));
    gen_cmd->add_option("--decisions", gp.n_decisions)->check(CLI::Range(0, 16));
    gen_cmd->add_option("--values", gp.n_values)->check(CLI::Range(0, 16));
    gen_cmd->add_option("--max-card", gp.max_card)->check(CLI::Range(2, 8));
    gen_cmd->add_option("--max-parents", gp.max_parents)->check(CLI::Range(0, 8));
    gen_cmd->add_flag("--soluble", gp.soluble, "traditional influence diagram");

    auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive-enumeration reference");
    oracle_cmd->add_option("input", in_path)->required();
    oracle_cmd->add_option("--cap", cap, "joint state-space cell cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (compile_cmd->parsed()) return cmd_compile(in_path, dump);
        if (solve_cmd->parsed())
            return cmd_solve(in_path, arch, general, report, dump_jt_flag, out_path);
        if (compare_cmd->parsed()) return cmd_compare(in_path);
        if (gen_cmd->parsed()) return cmd_gen(out_path, gp);
        if (oracle_cmd->parsed()) return cmd_oracle(in_path, cap);
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const SolverError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
