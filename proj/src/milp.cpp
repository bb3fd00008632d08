#include "nrhf/milp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <unordered_map>

#include "nrhf/text_io.hpp"

namespace nrhf::milp {

namespace {

std::string join_name(std::initializer_list<std::string> parts)
{
    std::string out;
    for (const auto& p : parts)
    {
        if (!out.empty())
            out += '_';
        out += p;
    }
    return out;
}

std::string s(int v) { return std::to_string(v); }

class Builder
{
public:
    explicit Builder(Model& model) : m_(model) {}

    int add_var(std::string name, VarType type, double lo, double hi, VarInfo info)
    {
        const int idx = static_cast<int>(m_.vars.size());
        index_.emplace(name, idx);
        m_.vars.push_back(Variable{std::move(name), type, lo, hi, std::move(info)});
        return idx;
    }

    void add_row(std::string name, std::string tag, std::vector<Term> terms, Sense sense, double rhs)
    {
        ++counts_[tag];
        m_.rows.push_back(Row{std::move(name), std::move(tag), std::move(terms), sense, rhs});
    }

    const std::map<std::string, std::size_t>& counts() const { return counts_; }

private:
    Model& m_;
    std::unordered_map<std::string, int> index_;
    std::map<std::string, std::size_t> counts_;
};

}  // namespace

int Model::find(const std::string& name) const
{
    for (int k = 0; k < static_cast<int>(vars.size()); ++k)
        if (vars[k].name == name)
            return k;
    return -1;
}

double required_big_m(const Instance& instance, double epsilon)
{
    const Graph& g = instance.graph;
    double sum_edges = 0.0, sum_time = 0.0, max_t = 0.0, max_c = 0.0, max_z = 0.0;
    for (const Edge& e : g.edges())
    {
        sum_edges += std::max({static_cast<double>(e.attr.travel_time), e.attr.energy_cost, e.attr.recharge});
        sum_time += e.attr.travel_time;
        max_t = std::max(max_t, static_cast<double>(e.attr.travel_time));
        max_c = std::max(max_c, e.attr.energy_cost);
        max_z = std::max(max_z, e.attr.recharge);
    }
    double max_init = 0.0, max_bmax = 0.0, max_q0 = 0.0, max_t0 = 0.0;
    for (const AgentSpec& a : instance.agents)
    {
        max_init = std::max({max_init, a.battery_init, a.battery_max, a.fuel_init, static_cast<double>(a.start_time)});
        max_bmax = std::max(max_bmax, a.battery_max);
        max_q0 = std::max(max_q0, a.fuel_init);
        max_t0 = std::max(max_t0, static_cast<double>(a.start_time));
    }
    const double t_max = max_t0 + sum_time;
    return std::max({sum_edges + max_init, t_max + max_t + epsilon, max_bmax + max_c + max_z, max_q0 + max_z});
}

Model export_milp(const Instance& instance, const MilpConfig& config)
{
    require_valid(instance);
    if (config.naming_version != 1)
        throw MilpError("unsupported variable naming version " + std::to_string(config.naming_version));

    const double eps = config.epsilon.value_or(static_cast<double>(instance.epsilon));
    if (!(eps > 0.0))
        throw MilpError("epsilon must be positive");
    const double needed = required_big_m(instance, eps);
    const double M = config.big_m.value_or(needed);
    if (!(M >= needed))
        throw MilpError("big_m = " + text::format_real(M) + " is below the bound " + text::format_real(needed) +
                        " needed to keep deactivated rows slack for this instance");

    const Graph& graph = instance.graph;
    const int n_nodes = graph.node_count();
    const int n_edges = graph.edge_count();
    const int n_agents = instance.agent_count();

    double t_max = 0.0;
    for (const AgentSpec& a : instance.agents)
        t_max = std::max(t_max, static_cast<double>(a.start_time));
    for (const Edge& e : graph.edges())
        t_max += e.attr.travel_time;

    Model model;
    model.big_m = M;
    model.epsilon = eps;
    Builder b(model);

    // Columns, agent by agent.
    std::vector<std::vector<int>> x(n_agents, std::vector<int>(n_edges)), gv = x;
    std::vector<std::vector<int>> bv(n_agents, std::vector<int>(n_nodes)), qv = bv, tv = bv;
    for (int k = 0; k < n_agents; ++k)
    {
        const AgentSpec& a = instance.agents[k];
        for (EdgeIndex e = 0; e < n_edges; ++e)
        {
            const Edge& ed = graph.edge(e);
            x[k][e] = b.add_var(join_name({"x", s(k), s(ed.from), s(ed.to)}), VarType::Binary, 0, 1,
                                VarInfo{"x", k, -1, ed.from, ed.to});
            gv[k][e] = b.add_var(join_name({"g", s(k), s(ed.from), s(ed.to)}), VarType::Binary, 0, 1,
                                 VarInfo{"g", k, -1, ed.from, ed.to});
            model.objective.push_back(Term{x[k][e], ed.attr.travel_cost});
        }
        for (NodeId i = 0; i < n_nodes; ++i)
        {
            bv[k][i] = b.add_var(join_name({"b", s(k), s(i)}), VarType::Continuous, 0, a.battery_max,
                                 VarInfo{"b", k, -1, i, kNoNode});
            qv[k][i] = b.add_var(join_name({"q", s(k), s(i)}), VarType::Continuous, 0, a.fuel_init,
                                 VarInfo{"q", k, -1, i, kNoNode});
            tv[k][i] = b.add_var(join_name({"t", s(k), s(i)}), VarType::Continuous, 0, t_max,
                                 VarInfo{"t", k, -1, i, kNoNode});
        }
    }

    // Rows, agent by agent.
    for (int k = 0; k < n_agents; ++k)
    {
        const AgentSpec& a = instance.agents[k];
        std::vector<Term> out_start, in_goal;
        for (EdgeIndex e : graph.out_edges(a.start))
            out_start.push_back(Term{x[k][e], 1});
        for (EdgeIndex e : graph.in_edges(a.goal))
            in_goal.push_back(Term{x[k][e], 1});
        b.add_row(join_name({"deg_start", s(k)}), "deg_start", out_start, Sense::Equal, 1);
        b.add_row(join_name({"deg_goal", s(k)}), "deg_goal", in_goal, Sense::Equal, 1);
        for (NodeId i = 0; i < n_nodes; ++i)
        {
            if (i == a.start || i == a.goal)
                continue;
            std::vector<Term> terms;
            for (EdgeIndex e : graph.in_edges(i))
                terms.push_back(Term{x[k][e], 1});
            for (EdgeIndex e : graph.out_edges(i))
                terms.push_back(Term{x[k][e], -1});
            b.add_row(join_name({"flow", s(k), s(i)}), "flow", terms, Sense::Equal, 0);
        }

        b.add_row(join_name({"batt_init", s(k)}), "batt_init", {Term{bv[k][a.start], 1}}, Sense::Equal,
                  a.battery_init);
        b.add_row(join_name({"fuel_init", s(k)}), "fuel_init", {Term{qv[k][a.start], 1}}, Sense::Equal, a.fuel_init);
        b.add_row(join_name({"time_init", s(k)}), "time_init", {Term{tv[k][a.start], 1}}, Sense::Equal,
                  a.start_time);

        for (EdgeIndex e = 0; e < n_edges; ++e)
        {
            const Edge& ed = graph.edge(e);
            const EdgeAttr& at = ed.attr;
            const std::string suffix = join_name({s(k), s(ed.from), s(ed.to)});
            const int bi = bv[k][ed.from], bj = bv[k][ed.to];
            const int qi = qv[k][ed.from], qj = qv[k][ed.to];
            const int ti = tv[k][ed.from], tj = tv[k][ed.to];
            const int xe = x[k][e], ge = gv[k][e];

            // b_j <= b_i - C + Z g + M (1 - x)
            b.add_row("batt_upper_" + suffix, "batt_upper",
                      {Term{bj, 1}, Term{bi, -1}, Term{ge, -at.recharge}, Term{xe, M}}, Sense::LessEqual,
                      M - at.energy_cost);
            // b_j >= b_i - C + Z g - M (1 - x)
            b.add_row("batt_lower_" + suffix, "batt_lower",
                      {Term{bj, 1}, Term{bi, -1}, Term{ge, -at.recharge}, Term{xe, -M}}, Sense::GreaterEqual,
                      -at.energy_cost - M);
            // q_j <= q_i - Z g + M (1 - x)
            b.add_row("fuel_" + suffix, "fuel", {Term{qj, 1}, Term{qi, -1}, Term{ge, at.recharge}, Term{xe, M}},
                      Sense::LessEqual, M);
            b.add_row("gen_use_" + suffix, "gen_use", {Term{ge, 1}, Term{xe, -1}}, Sense::LessEqual, 0);
            b.add_row("gen_noise_" + suffix, "gen_noise", {Term{ge, 1}}, Sense::LessEqual, at.gen_allowed ? 1 : 0);
            // t_j >= t_i + T - M (1 - x)   and   t_j <= t_i + T + M (1 - x)
            b.add_row("time_lower_" + suffix, "time_lower", {Term{tj, 1}, Term{ti, -1}, Term{xe, -M}},
                      Sense::GreaterEqual, at.travel_time - M);
            b.add_row("time_upper_" + suffix, "time_upper", {Term{tj, 1}, Term{ti, -1}, Term{xe, M}},
                      Sense::LessEqual, at.travel_time + M);
        }
    }

    // Pairwise separation.
    std::size_t bidirectional = 0;
    for (const Edge& ed : graph.edges())
        if (graph.has_edge(ed.to, ed.from))
            ++bidirectional;

    for (int ka = 0; ka < n_agents; ++ka)
        for (int kb = ka + 1; kb < n_agents; ++kb)
        {
            const AgentSpec& A = instance.agents[ka];
            const AgentSpec& B = instance.agents[kb];
            for (NodeId i = 0; i < n_nodes; ++i)
            {
                const std::string suffix = join_name({s(ka), s(kb), s(i)});
                const int y = b.add_var("yv_" + suffix, VarType::Binary, 0, 1, VarInfo{"yv", ka, kb, i, kNoNode});
                const int u = b.add_var("uv_" + suffix, VarType::Binary, 0, 1, VarInfo{"uv", ka, kb, i, kNoNode});

                // u + visits_a(i) + visits_b(i) <= 2, a visit at one's own start is the constant 1.
                std::vector<Term> gate{Term{u, 1}};
                double gate_rhs = 2;
                for (auto [k, spec] : {std::pair{ka, &A}, std::pair{kb, &B}})
                {
                    if (i == spec->start)
                        gate_rhs -= 1;
                    else
                        for (EdgeIndex e : graph.in_edges(i))
                            gate.push_back(Term{x[k][e], 1});
                }
                b.add_row("vertex_gate_" + suffix, "vertex_gate", gate, Sense::LessEqual, gate_rhs);

                const int ta = tv[ka][i], tb = tv[kb][i];
                // t_a - t_b >= eps - M y - M u
                b.add_row("vertex_sep_a_" + suffix, "vertex_sep",
                          {Term{ta, 1}, Term{tb, -1}, Term{y, M}, Term{u, M}}, Sense::GreaterEqual, eps);
                // t_b - t_a >= eps - M (1 - y) - M u
                b.add_row("vertex_sep_b_" + suffix, "vertex_sep",
                          {Term{tb, 1}, Term{ta, -1}, Term{y, -M}, Term{u, M}}, Sense::GreaterEqual, eps - M);
            }

            for (EdgeIndex e = 0; e < n_edges; ++e)
            {
                const Edge& ed = graph.edge(e);
                auto rev = graph.find_edge(ed.to, ed.from);
                if (!rev)
                    continue;
                const std::string suffix = join_name({s(ka), s(kb), s(ed.from), s(ed.to)});
                const int y = b.add_var("ye_" + suffix, VarType::Binary, 0, 1, VarInfo{"ye", ka, kb, ed.from, ed.to});
                const int ta_j = tv[ka][ed.to], tb_i = tv[kb][ed.from];
                const int xa = x[ka][e], xb = x[kb][*rev];
                // t^a_j - t^b_i >= eps - M y - M (2 - x^a_ij - x^b_ji)
                b.add_row("edge_sep_a_" + suffix, "edge_sep",
                          {Term{ta_j, 1}, Term{tb_i, -1}, Term{y, M}, Term{xa, -M}, Term{xb, -M}},
                          Sense::GreaterEqual, eps - 2 * M);
                // t^b_i - t^a_j >= eps - M (1 - y) - M (2 - x^a_ij - x^b_ji)
                b.add_row("edge_sep_b_" + suffix, "edge_sep",
                          {Term{tb_i, 1}, Term{ta_j, -1}, Term{y, -M}, Term{xa, -M}, Term{xb, -M}},
                          Sense::GreaterEqual, eps - 3 * M);
            }
        }

    // Closed-form row counts.
    const std::size_t U = n_agents, N = n_nodes, E = n_edges, P = U * (U - 1) / 2;
    const std::map<std::string, std::size_t> expected{
        {"deg_start", U},       {"deg_goal", U},        {"flow", U * (N - 2)},
        {"batt_init", U},       {"batt_upper", U * E},  {"batt_lower", U * E},
        {"fuel_init", U},       {"fuel", U * E},        {"gen_use", U * E},
        {"gen_noise", U * E},   {"time_init", U},       {"time_lower", U * E},
        {"time_upper", U * E},  {"vertex_gate", P * N}, {"vertex_sep", 2 * P * N},
        {"edge_sep", 2 * P * bidirectional},
    };
    for (const auto& [tag, want] : expected)
    {
        auto it = b.counts().find(tag);
        const std::size_t got = it == b.counts().end() ? 0 : it->second;
        if (got != want)
            throw std::logic_error("milp export: " + tag + " has " + std::to_string(got) + " rows, expected " +
                                   std::to_string(want));
    }
    if (b.counts().size() > expected.size())
        throw std::logic_error("milp export: unexpected row tag");
    return model;
}

namespace {

void write_terms(std::ostringstream& os, const std::vector<Term>& terms, const Model& model)
{
    if (terms.empty())
    {
        os << " 0 " << model.vars.front().name;
        return;
    }
    int on_line = 0;
    for (std::size_t k = 0; k < terms.size(); ++k)
    {
        const Term& t = terms[k];
        if (on_line == 8)
        {
            os << "\n   ";
            on_line = 0;
        }
        const double mag = std::abs(t.coef);
        os << (t.coef < 0 ? " - " : (k == 0 ? " " : " + "));
        if (mag != 1.0)
            os << text::format_real(mag) << ' ';
        os << model.vars[t.var].name;
        ++on_line;
    }
}

}  // namespace

std::string write_lp(const Model& model)
{
    std::ostringstream os;
    os << "\\ NRHF-MAPF model, naming v1\n";
    os << "\\ big_m = " << text::format_real(model.big_m) << ", epsilon = " << text::format_real(model.epsilon)
       << '\n';
    os << "Minimize\n obj:";
    write_terms(os, model.objective, model);
    os << "\nSubject To\n";
    for (const Row& r : model.rows)
    {
        os << ' ' << r.name << ':';
        write_terms(os, r.terms, model);
        switch (r.sense)
        {
        case Sense::LessEqual: os << " <= "; break;
        case Sense::GreaterEqual: os << " >= "; break;
        case Sense::Equal: os << " = "; break;
        }
        os << text::format_real(r.rhs) << '\n';
    }
    os << "Bounds\n";
    for (const Variable& v : model.vars)
        if (v.type == VarType::Continuous)
            os << ' ' << text::format_real(v.lower) << " <= " << v.name << " <= " << text::format_real(v.upper)
               << '\n';
    os << "Binaries\n";
    int on_line = 0;
    for (const Variable& v : model.vars)
    {
        if (v.type != VarType::Binary)
            continue;
        os << ' ' << v.name;
        if (++on_line == 8)
        {
            os << '\n';
            on_line = 0;
        }
    }
    if (on_line != 0)
        os << '\n';
    os << "End\n";
    return os.str();
}

std::string write_name_map(const Model& model)
{
    std::ostringstream os;
    os << "# name symbol agent agent_b i j\n";
    for (const Variable& v : model.vars)
        os << v.name << ' ' << v.info.symbol << ' ' << v.info.agent << ' ' << v.info.agent_b << ' ' << v.info.i << ' '
           << v.info.j << '\n';
    return os.str();
}

EmbedReport embed_solution(const Instance& instance, const Model& model, const Solution& solution)
{
    if (static_cast<int>(solution.plans.size()) != instance.agent_count())
        throw MilpError("solution has " + std::to_string(solution.plans.size()) + " plans for " +
                        std::to_string(instance.agent_count()) + " agents");

    const Graph& graph = instance.graph;
    const int n_agents = instance.agent_count();

    // Per agent: used edges with generator flag, and node -> (b, q, t).
    struct NodeState
    {
        double battery, fuel;
        int time;
    };
    std::vector<std::map<std::pair<NodeId, NodeId>, bool>> used(n_agents);
    std::vector<std::map<NodeId, NodeState>> at(n_agents);
    for (int k = 0; k < n_agents; ++k)
    {
        const AgentSpec& a = instance.agents[k];
        const Plan& p = solution.plans[k];
        if (p.path.empty() || p.arrival_times.size() != p.path.size() || p.gen_pattern.size() + 1 != p.path.size())
            throw MilpError("plan " + std::to_string(k) + " is malformed");
        double battery = a.battery_init, fuel = a.fuel_init;
        at[k][p.path[0]] = NodeState{battery, fuel, p.arrival_times[0]};
        for (std::size_t s = 0; s + 1 < p.path.size(); ++s)
        {
            auto e = graph.find_edge(p.path[s], p.path[s + 1]);
            if (!e)
                throw MilpError("plan " + std::to_string(k) + " uses a missing edge");
            const EdgeAttr& attr = graph.edge(*e).attr;
            const bool on = p.gen_pattern[s];
            battery += -attr.energy_cost + (on ? attr.recharge : 0.0);
            fuel -= on ? attr.recharge : 0.0;
            used[k][{p.path[s], p.path[s + 1]}] = on;
            at[k][p.path[s + 1]] = NodeState{battery, fuel, p.arrival_times[s + 1]};
        }
    }

    auto visited = [&](int k, NodeId i) { return at[k].count(i) > 0; };
    auto t_of = [&](int k, NodeId i) { return visited(k, i) ? static_cast<double>(at[k].at(i).time) : 0.0; };

    EmbedReport report;
    report.assignment.assign(model.vars.size(), 0.0);
    for (std::size_t v = 0; v < model.vars.size(); ++v)
    {
        const VarInfo& info = model.vars[v].info;
        double value = 0.0;
        if (info.symbol == "x" || info.symbol == "g")
        {
            auto it = used[info.agent].find({info.i, info.j});
            if (it != used[info.agent].end())
                value = info.symbol == "x" ? 1.0 : (it->second ? 1.0 : 0.0);
        }
        else if (info.symbol == "b" || info.symbol == "q" || info.symbol == "t")
        {
            auto it = at[info.agent].find(info.i);
            if (it != at[info.agent].end())
                value = info.symbol == "b" ? it->second.battery
                        : info.symbol == "q" ? it->second.fuel
                                             : static_cast<double>(it->second.time);
        }
        else if (info.symbol == "uv")
            value = visited(info.agent, info.i) && visited(info.agent_b, info.i) ? 0.0 : 1.0;
        else if (info.symbol == "yv")
            value = t_of(info.agent_b, info.i) >= t_of(info.agent, info.i) ? 1.0 : 0.0;
        else if (info.symbol == "ye")
            value = t_of(info.agent_b, info.i) >= t_of(info.agent, info.j) ? 1.0 : 0.0;
        report.assignment[v] = value;

        const Variable& var = model.vars[v];
        if (value < var.lower - kRowTolerance || value > var.upper + kRowTolerance)
            report.bound_violations.push_back(var.name + " = " + text::format_real(value) + " outside [" +
                                              text::format_real(var.lower) + ", " + text::format_real(var.upper) +
                                              "]");
    }

    for (const Term& t : model.objective)
        report.objective += t.coef * report.assignment[t.var];

    for (const Row& r : model.rows)
    {
        double lhs = 0.0;
        for (const Term& t : r.terms)
            lhs += t.coef * report.assignment[t.var];
        const double tol = kRowTolerance * (1.0 + std::abs(r.rhs));
        bool ok = true;
        switch (r.sense)
        {
        case Sense::LessEqual: ok = lhs <= r.rhs + tol; break;
        case Sense::GreaterEqual: ok = lhs >= r.rhs - tol; break;
        case Sense::Equal: ok = std::abs(lhs - r.rhs) <= tol; break;
        }
        if (!ok)
            report.violations.push_back(RowViolation{r.name, r.tag, lhs, r.rhs});
    }
    return report;
}

}  // namespace nrhf::milp
