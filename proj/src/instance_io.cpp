#include "nrhf/instance_io.hpp"

#include <fstream>
#include <optional>
#include <sstream>

namespace nrhf {

namespace {

enum class Section { None, Graph, Agents, Params };

Section section_from(const text::Line& line)
{
    std::string_view tok = line.tokens[0];
    if (line.tokens.size() != 1)
        throw ParseError(line.number, "unexpected tokens after section header '" + std::string(tok) + "'");
    if (tok == "[graph]")
        return Section::Graph;
    if (tok == "[agents]")
        return Section::Agents;
    if (tok == "[params]")
        return Section::Params;
    throw ParseError(line.number, "unknown section '" + std::string(tok) + "'");
}

void expect_columns(const text::Line& line, std::size_t n, std::string_view what)
{
    if (line.tokens.size() != n)
        throw ParseError(line.number, std::string(what) + " line needs " + std::to_string(n) + " fields, found " +
                                          std::to_string(line.tokens.size()));
}

}  // namespace

Instance load_instance(std::string_view input)
{
    const auto lines = text::tokenize(input);
    if (lines.empty())
        throw ParseError(1, "empty instance file");

    const text::Line& header = lines.front();
    if (header.tokens.size() != 2 || header.tokens[0] != kInstanceHeader)
        throw ParseError(header.number, "expected header '" + std::string(kInstanceHeader) + " <version>'");
    if (text::parse_int(header, 1, "version") != kInstanceVersion)
        throw ParseError(header.number, "unsupported instance version '" + std::string(header.tokens[1]) + "'");

    std::optional<int> node_count;
    std::optional<int> epsilon;
    std::vector<Edge> edges;
    std::vector<AgentSpec> agents;
    bool seen[4] = {false, false, false, false};
    Section section = Section::None;

    for (std::size_t li = 1; li < lines.size(); ++li)
    {
        const text::Line& line = lines[li];
        if (line.tokens[0].starts_with("["))
        {
            section = section_from(line);
            if (seen[static_cast<int>(section)])
                throw ParseError(line.number, "section '" + std::string(line.tokens[0]) + "' repeated");
            seen[static_cast<int>(section)] = true;
            continue;
        }

        switch (section)
        {
        case Section::None:
            throw ParseError(line.number, "content before the first section");

        case Section::Graph:
            if (text::is_assignment(line))
            {
                if (line.tokens[0] != "node_count")
                    throw ParseError(line.number, "unknown field '" + std::string(line.tokens[0]) + "' in [graph]");
                if (node_count)
                    throw ParseError(line.number, "node_count given twice");
                long long n = text::parse_int(line, 2, "node_count");
                if (n < 0 || n > 100'000'000)
                    throw ParseError(line.number, "node_count out of range");
                node_count = static_cast<int>(n);
            }
            else
            {
                if (!node_count)
                    throw ParseError(line.number, "edge listed before node_count");
                expect_columns(line, 7, "edge");
                Edge e;
                long long i = text::parse_int(line, 0, "i");
                long long j = text::parse_int(line, 1, "j");
                if (i < 0 || i >= *node_count || j < 0 || j >= *node_count)
                    throw ParseError(line.number, "edge endpoint outside [0," + std::to_string(*node_count) + ")");
                e.from = static_cast<NodeId>(i);
                e.to = static_cast<NodeId>(j);
                e.attr.travel_cost = text::parse_real(line, 2, "D");
                long long t = text::parse_int(line, 3, "T");
                if (t < 0 || t > 1'000'000'000)
                    throw ParseError(line.number, "field 'T' out of range");
                e.attr.travel_time = static_cast<int>(t);
                e.attr.energy_cost = text::parse_real(line, 4, "C");
                e.attr.recharge = text::parse_real(line, 5, "Z");
                long long gen = text::parse_int(line, 6, "G");
                if (gen != 0 && gen != 1)
                    throw ParseError(line.number, "field 'G' must be 0 or 1");
                e.attr.gen_allowed = gen == 1;
                edges.push_back(e);
            }
            break;

        case Section::Agents:
        {
            expect_columns(line, 6, "agent");
            AgentSpec a;
            a.start = static_cast<NodeId>(text::parse_int(line, 0, "start"));
            a.goal = static_cast<NodeId>(text::parse_int(line, 1, "goal"));
            a.battery_init = text::parse_real(line, 2, "B0");
            a.battery_max = text::parse_real(line, 3, "Bmax");
            a.fuel_init = text::parse_real(line, 4, "Q0");
            long long t0 = text::parse_int(line, 5, "T0");
            if (t0 < 0 || t0 > 1'000'000'000)
                throw ParseError(line.number, "field 'T0' out of range");
            a.start_time = static_cast<int>(t0);
            agents.push_back(a);
            break;
        }

        case Section::Params:
            if (!text::is_assignment(line))
                throw ParseError(line.number, "expected 'key = value' in [params]");
            if (line.tokens[0] != "epsilon")
                throw ParseError(line.number, "unknown field '" + std::string(line.tokens[0]) + "' in [params]");
            if (epsilon)
                throw ParseError(line.number, "epsilon given twice");
            {
                long long eps = text::parse_int(line, 2, "epsilon");
                if (eps < 1 || eps > 1'000'000'000)
                    throw ParseError(line.number, "epsilon must be a positive integer");
                epsilon = static_cast<int>(eps);
            }
            break;
        }
    }

    const int last = lines.back().number;
    if (!seen[static_cast<int>(Section::Graph)] || !node_count)
        throw ParseError(last, "missing [graph] section or node_count");
    if (!seen[static_cast<int>(Section::Agents)])
        throw ParseError(last, "missing [agents] section");
    if (!epsilon)
        throw ParseError(last, "missing 'epsilon' in [params]");

    Instance instance{Graph(*node_count, std::move(edges)), std::move(agents), *epsilon};
    require_valid(instance);
    return instance;
}

std::string save_instance(const Instance& instance)
{
    std::ostringstream os;
    os << kInstanceHeader << ' ' << kInstanceVersion << '\n';
    os << "[graph]\n";
    os << "node_count = " << instance.graph.node_count() << '\n';
    os << "# i j D T C Z G\n";
    for (const Edge& e : instance.graph.edges())
    {
        os << e.from << ' ' << e.to << ' ' << text::format_real(e.attr.travel_cost) << ' ' << e.attr.travel_time
           << ' ' << text::format_real(e.attr.energy_cost) << ' ' << text::format_real(e.attr.recharge) << ' '
           << (e.attr.gen_allowed ? 1 : 0) << '\n';
    }
    os << "[agents]\n";
    os << "# start goal B0 Bmax Q0 T0\n";
    for (const AgentSpec& a : instance.agents)
    {
        os << a.start << ' ' << a.goal << ' ' << text::format_real(a.battery_init) << ' '
           << text::format_real(a.battery_max) << ' ' << text::format_real(a.fuel_init) << ' ' << a.start_time
           << '\n';
    }
    os << "[params]\n";
    os << "epsilon = " << instance.epsilon << '\n';
    return os.str();
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
    if (!out)
        throw std::runtime_error("write failed for '" + path.string() + "'");
}

Instance read_instance_file(const std::filesystem::path& path) { return load_instance(read_text_file(path)); }

void write_instance_file(const std::filesystem::path& path, const Instance& instance)
{
    write_text_file(path, save_instance(instance));
}

}  // namespace nrhf
