#include "wpremium/spec_parse.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "wpremium/errors.hpp"

namespace wpremium {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return char(std::tolower(c)); });
    return s;
}

struct Token {
    std::string text;
    std::size_t offset;  // position within the original spec
};

std::vector<Token> split_colons(const std::string& spec) {
    std::vector<Token> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t colon = spec.find(':', start);
        out.push_back({spec.substr(start, colon - start), start});
        if (colon == std::string::npos) break;
        start = colon + 1;
    }
    return out;
}

double parse_number(const Token& tok, const char* what) {
    if (tok.text.empty())
        throw ParseError(std::string("empty ") + what, tok.offset);
    const char* begin = tok.text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + tok.text.size())
        throw ParseError(std::string("expected a number for ") + what + ", got '" +
                             tok.text + "'",
                         tok.offset);
    return v;
}

void expect_params(const std::vector<Token>& toks, std::size_t n, const char* usage) {
    if (toks.size() - 1 != n)
        throw ParseError(std::string("expected ") + usage,
                         toks.size() > n + 1 ? toks[n + 1].offset : toks.back().offset);
}

}  // namespace

LossModel parse_dist_spec(const std::string& spec) {
    const std::vector<Token> toks = split_colons(spec);
    const std::string name = lower(toks[0].text);

    if (name == "exp" || name == "exponential") {
        expect_params(toks, 1, "exp:<rate>");
        return LossModel::exponential(parse_number(toks[1], "rate"));
    }
    if (name == "lognormal") {
        expect_params(toks, 2, "lognormal:<mu>:<sigma>");
        return LossModel::lognormal(parse_number(toks[1], "mu"),
                                    parse_number(toks[2], "sigma"));
    }
    if (name == "pareto") {
        expect_params(toks, 2, "pareto:<alpha>:<xm>");
        return LossModel::pareto(parse_number(toks[1], "alpha"),
                                 parse_number(toks[2], "xm"));
    }
    if (name == "gamma") {
        expect_params(toks, 2, "gamma:<shape>:<scale>");
        return LossModel::gamma(parse_number(toks[1], "shape"),
                                parse_number(toks[2], "scale"));
    }
    if (name == "uniform") {
        expect_params(toks, 2, "uniform:<a>:<b>");
        return LossModel::uniform(parse_number(toks[1], "a"),
                                  parse_number(toks[2], "b"));
    }
    if (name == "empirical") {
        // The path may itself contain colons; everything past the first is it.
        if (toks.size() < 2 || spec.size() <= toks[1].offset ||
            spec.substr(toks[1].offset).empty())
            throw ParseError("expected empirical:<path>", toks[0].text.size());
        return LossModel::empirical_from_file(spec.substr(toks[1].offset));
    }
    throw ParseError("unknown distribution '" + toks[0].text +
                         "' (try exp, lognormal, pareto, gamma, uniform, empirical)",
                     toks[0].offset);
}

std::vector<WeightFamily> parse_weight_spec(const std::string& spec) {
    if (lower(spec) == "all") {
        return {WeightFamily::esscher(), WeightFamily::cte(),  WeightFamily::kamps(),
                WeightFamily::w4(),      WeightFamily::w5(),   WeightFamily::w6(),
                WeightFamily::w7()};
    }
    return {weight_family_from_name(spec)};
}

}  // namespace wpremium
