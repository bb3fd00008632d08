#include "nrhf/text_io.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>

namespace nrhf::text {

std::string format_real(double v)
{
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

std::vector<Line> tokenize(std::string_view input)
{
    std::vector<Line> lines;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= input.size())
    {
        std::size_t eol = input.find('\n', pos);
        if (eol == std::string_view::npos)
            eol = input.size();
        std::string_view raw = input.substr(pos, eol - pos);
        ++number;
        if (auto hash = raw.find('#'); hash != std::string_view::npos)
            raw = raw.substr(0, hash);

        Line line{number, {}};
        std::size_t i = 0;
        while (i < raw.size())
        {
            while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i])))
                ++i;
            std::size_t j = i;
            while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j])))
                ++j;
            if (j > i)
                line.tokens.push_back(raw.substr(i, j - i));
            i = j;
        }
        if (!line.tokens.empty())
            lines.push_back(std::move(line));
        if (eol == input.size())
            break;
        pos = eol + 1;
    }
    return lines;
}

double parse_real(const Line& line, std::size_t index, std::string_view field)
{
    if (index >= line.tokens.size())
        throw ParseError(line.number, "missing field '" + std::string(field) + "'");
    std::string_view tok = line.tokens[index];
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v))
        throw ParseError(line.number, "field '" + std::string(field) + "': expected a real number, got '" +
                                          std::string(tok) + "'");
    return v;
}

long long parse_int(const Line& line, std::size_t index, std::string_view field)
{
    if (index >= line.tokens.size())
        throw ParseError(line.number, "missing field '" + std::string(field) + "'");
    std::string_view tok = line.tokens[index];
    long long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(line.number, "field '" + std::string(field) + "': expected an integer, got '" +
                                          std::string(tok) + "'");
    return v;
}

bool is_assignment(const Line& line) { return line.tokens.size() == 3 && line.tokens[1] == "="; }

}  // namespace nrhf::text
