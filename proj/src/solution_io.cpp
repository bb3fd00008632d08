#include "nrhf/solution_io.hpp"

#include <optional>
#include <sstream>

#include "nrhf/text_io.hpp"

namespace nrhf {

std::string save_solution(const Solution& solution)
{
    std::ostringstream os;
    os << kSolutionHeader << ' ' << kSolutionVersion << '\n';
    os << "total_cost = " << text::format_real(solution.total_cost) << '\n';
    for (std::size_t k = 0; k < solution.plans.size(); ++k)
    {
        const Plan& p = solution.plans[k];
        os << "[agent " << k << "]\n";
        os << "cost = " << text::format_real(p.cost) << '\n';
        os << "final_battery = " << text::format_real(p.final_battery) << '\n';
        os << "final_fuel = " << text::format_real(p.final_fuel) << '\n';
        os << "# node time gen\n";
        for (std::size_t s = 0; s < p.path.size(); ++s)
        {
            os << p.path[s] << ' ' << p.arrival_times[s] << ' ';
            if (s == 0)
                os << '-';
            else
                os << (p.gen_pattern[s - 1] ? 1 : 0);
            os << '\n';
        }
    }
    return os.str();
}

Solution load_solution(std::string_view input)
{
    const auto lines = text::tokenize(input);
    if (lines.empty())
        throw ParseError(1, "empty solution file");
    const text::Line& header = lines.front();
    if (header.tokens.size() != 2 || header.tokens[0] != kSolutionHeader ||
        text::parse_int(header, 1, "version") != kSolutionVersion)
        throw ParseError(header.number, "expected header '" + std::string(kSolutionHeader) + " 1'");

    Solution sol;
    std::optional<double> total;
    Plan* plan = nullptr;
    for (std::size_t li = 1; li < lines.size(); ++li)
    {
        const text::Line& line = lines[li];
        if (line.tokens[0] == "[agent")
        {
            if (line.tokens.size() != 2 || !line.tokens[1].ends_with("]"))
                throw ParseError(line.number, "malformed agent header");
            text::Line idx{line.number, {line.tokens[1].substr(0, line.tokens[1].size() - 1)}};
            if (text::parse_int(idx, 0, "agent") != static_cast<long long>(sol.plans.size()))
                throw ParseError(line.number, "agent sections must be numbered 0,1,2,... in order");
            sol.plans.emplace_back();
            plan = &sol.plans.back();
            continue;
        }
        if (text::is_assignment(line))
        {
            const std::string_view key = line.tokens[0];
            const double v = text::parse_real(line, 2, key);
            if (plan == nullptr)
            {
                if (key != "total_cost")
                    throw ParseError(line.number, "unknown field '" + std::string(key) + "'");
                total = v;
            }
            else if (key == "cost")
                plan->cost = v;
            else if (key == "final_battery")
                plan->final_battery = v;
            else if (key == "final_fuel")
                plan->final_fuel = v;
            else
                throw ParseError(line.number, "unknown field '" + std::string(key) + "'");
            continue;
        }
        if (plan == nullptr)
            throw ParseError(line.number, "step line outside an agent section");
        if (line.tokens.size() != 3)
            throw ParseError(line.number, "step line needs 'node time gen'");
        plan->path.push_back(static_cast<NodeId>(text::parse_int(line, 0, "node")));
        plan->arrival_times.push_back(static_cast<int>(text::parse_int(line, 1, "time")));
        const std::string_view gen = line.tokens[2];
        if (plan->path.size() == 1)
        {
            if (gen != "-")
                throw ParseError(line.number, "first step of a plan must have gen '-'");
        }
        else if (gen == "0" || gen == "1")
            plan->gen_pattern.push_back(gen == "1");
        else
            throw ParseError(line.number, "field 'gen' must be 0 or 1");
    }
    if (!total)
        throw ParseError(lines.back().number, "missing total_cost");
    sol.total_cost = *total;
    return sol;
}

std::string format_stats(const CbsStats& s, SearchStatus status)
{
    std::ostringstream os;
    os << "outcome = " << to_string(status) << '\n'
       << "ct_nodes_expanded = " << s.ct_nodes_expanded << '\n'
       << "ct_nodes_generated = " << s.ct_nodes_generated << '\n'
       << "subproblem_calls = " << s.subproblem_calls << '\n'
       << "subproblem_seconds = " << s.subproblem_seconds << '\n'
       << "labels_created = " << s.labels_created << '\n'
       << "root_cost = " << text::format_real(s.root_cost) << '\n'
       << "root_conflicts = " << s.root_conflicts << '\n'
       << "wall_seconds = " << s.wall_seconds << '\n';
    return os.str();
}

}  // namespace nrhf
