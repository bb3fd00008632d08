#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nrhf {

// Raised for malformed instance or solution text. Carries the 1-based line.
class ParseError : public std::runtime_error
{
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {}

    int line() const { return line_; }

private:
    int line_;
};

namespace text {

// Shortest decimal text that parses back to the same double.
std::string format_real(double v);

struct Line
{
    int number = 0;
    std::vector<std::string_view> tokens;
};

// Splits into whitespace tokens, dropping `#` comments and blank lines.
std::vector<Line> tokenize(std::string_view input);

double parse_real(const Line& line, std::size_t index, std::string_view field);
long long parse_int(const Line& line, std::size_t index, std::string_view field);

// `key = value` lines tokenize to exactly three tokens with "=" in the middle.
bool is_assignment(const Line& line);

}  // namespace text
}  // namespace nrhf
