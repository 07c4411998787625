#include "problem/problem.hpp"

#include "expr/parser.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace corank {

namespace {

enum class TokenKind { Word, Equals, String };

struct Token {
    TokenKind kind;
    std::string text;
};

struct Line {
    int number = 0;
    std::vector<Token> tokens;
};

class Reader {
public:
    Reader(const std::string& file) : file_(file) {}

    [[noreturn]] void fail(int line, const std::string& message) const { throw ValidationError(file_, line, message); }

    std::vector<Token> tokenize(const std::string& raw, int number) const
    {
        std::vector<Token> out;
        std::size_t i = 0;
        while (i < raw.size()) {
            const char c = raw[i];
            if (c == '#') break;
            if (c == ' ' || c == '\t' || c == '\r' || c == ',') {
                ++i;
            } else if (c == '=') {
                out.push_back({TokenKind::Equals, "="});
                ++i;
            } else if (c == '"') {
                std::string s;
                ++i;
                bool closed = false;
                while (i < raw.size()) {
                    if (raw[i] == '\\' && i + 1 < raw.size() && (raw[i + 1] == '"' || raw[i + 1] == '\\')) {
                        s += raw[i + 1];
                        i += 2;
                    } else if (raw[i] == '"') {
                        closed = true;
                        ++i;
                        break;
                    } else {
                        s += raw[i++];
                    }
                }
                if (!closed) fail(number, "unterminated string");
                out.push_back({TokenKind::String, std::move(s)});
            } else {
                std::size_t j = i;
                while (j < raw.size() && std::string_view(" \t\r,=\"#").find(raw[j]) == std::string_view::npos) ++j;
                out.push_back({TokenKind::Word, raw.substr(i, j - i)});
                i = j;
            }
        }
        return out;
    }

    double number(const Token& t, int line) const
    {
        if (t.kind != TokenKind::Word) fail(line, "expected a number");
        const char* begin = t.text.c_str();
        char* end = nullptr;
        errno = 0;
        const double v = std::strtod(begin, &end);
        if (end == begin || *end != '\0' || errno == ERANGE) fail(line, "'" + t.text + "' is not a number");
        return v;
    }

    const std::string& file() const { return file_; }

private:
    std::string file_;
};

// `key = "value"` or `key = word`.
std::pair<std::string, Token> assignment(const Reader& r, const Line& l)
{
    const auto& t = l.tokens;
    if (t.size() != 3 || t[0].kind != TokenKind::Word || t[1].kind != TokenKind::Equals) {
        r.fail(l.number, "expected key = value");
    }
    return {t[0].text, t[2]};
}

const std::string& quoted(const Reader& r, const Token& t, int line)
{
    if (t.kind != TokenKind::String) r.fail(line, "expected a quoted expression");
    return t.text;
}

template <typename F>
auto compile(const Reader& r, int line, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const Error& e) {
        r.fail(line, e.what());
    }
}

Chart read_chart(const Reader& r, const std::vector<Line>& lines, int header)
{
    std::vector<Coordinate> coords;
    std::vector<Parameter> params;
    bool strict = false;
    for (const auto& l : lines) {
        const auto& t = l.tokens;
        if (t[0].kind != TokenKind::Word) r.fail(l.number, "expected a chart declaration");
        const std::string& head = t[0].text;
        if (head == "torus-strict") {
            if (t.size() != 1) r.fail(l.number, "torus-strict takes no arguments");
            strict = true;
        } else if (head == "coordinate") {
            if (t.size() < 3 || t[1].kind != TokenKind::Word || t[2].kind != TokenKind::Word) {
                r.fail(l.number, "expected: coordinate <name> line|angle [lo hi]");
            }
            const std::string& kind = t[2].text;
            if (kind == "angle") {
                if (t.size() != 3) r.fail(l.number, "angle coordinates take no interval");
                coords.push_back(angle_coordinate(t[1].text));
            } else if (kind == "line") {
                if (t.size() == 3) {
                    coords.push_back(line_coordinate(t[1].text));
                } else if (t.size() == 5) {
                    coords.push_back(line_coordinate(t[1].text, r.number(t[3], l.number), r.number(t[4], l.number)));
                } else {
                    r.fail(l.number, "expected: coordinate <name> line [lo hi]");
                }
            } else {
                r.fail(l.number, "coordinate kind must be 'line' or 'angle', got '" + kind + "'");
            }
            compile(r, l.number, [&] { return Chart(coords, params, strict); });
        } else if (head == "parameter") {
            if (t.size() == 2 && t[1].kind == TokenKind::Word) {
                params.push_back({t[1].text});
            } else if (t.size() == 4 && t[1].kind == TokenKind::Word) {
                params.push_back({t[1].text, r.number(t[2], l.number), r.number(t[3], l.number)});
            } else {
                r.fail(l.number, "expected: parameter <name> [lo hi]");
            }
            compile(r, l.number, [&] { return Chart(coords, params, strict); });
        } else {
            r.fail(l.number, "unknown chart declaration '" + head + "'");
        }
    }
    if (coords.empty()) r.fail(header, "the chart declares no coordinates");
    return compile(r, header, [&] { return Chart(coords, params, strict); });
}

struct Needs {
    bool structure = false;
    bool adapted = false;
    bool even = false;
};

const std::map<std::string, Needs>& needs()
{
    static const std::map<std::string, Needs> table = {
        {"jacobi", {true, false, false}},
        {"corank", {true, false, false}},
        {"b_transversality", {true, false, true}},
        {"adapted_forms", {true, true, false}},
        {"first_obstruction", {true, true, false}},
        {"second_obstruction", {true, true, false}},
        {"modular", {true, false, false}},
        {"weinstein", {true, true, false}},
        {"unimodularity", {true, true, false}},
        {"transverse_poisson", {true, true, false}},
        {"b_extension", {true, true, false}},
        {"product", {false, false, false}},
        {"mapping_torus", {false, false, false}},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& analysis_vocabulary()
{
    static const std::vector<std::string> names = {
        "jacobi",        "corank",         "b_transversality", "adapted_forms",     "first_obstruction",
        "second_obstruction", "modular",   "weinstein",        "unimodularity",     "transverse_poisson",
        "b_extension",   "product",        "mapping_torus",
    };
    return names;
}

Problem parse_problem(std::string_view text, const std::string& name)
{
    const Reader r(name);
    static const std::set<std::string> sections = {"chart",    "structure",     "certificates", "product",
                                                   "mapping_torus", "analyses", "options"};
    std::map<std::string, std::vector<Line>> body;
    std::map<std::string, int> header_line;
    std::string current;

    std::istringstream in{std::string(text)};
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        std::size_t first = raw.find_first_not_of(" \t\r");
        if (first != std::string::npos && raw[first] == '[') {
            const std::size_t close = raw.find(']', first);
            if (close == std::string::npos) r.fail(number, "unterminated section header");
            const std::string rest = raw.substr(close + 1);
            if (!r.tokenize(rest, number).empty()) r.fail(number, "text after section header");
            current = raw.substr(first + 1, close - first - 1);
            if (!sections.count(current)) r.fail(number, "unknown section [" + current + "]");
            if (header_line.count(current)) r.fail(number, "duplicate section [" + current + "]");
            header_line[current] = number;
            body[current];
            continue;
        }
        auto tokens = r.tokenize(raw, number);
        if (tokens.empty()) continue;
        if (current.empty()) r.fail(number, "content before the first section header");
        body[current].push_back({number, std::move(tokens)});
    }
    if (!header_line.count("chart")) r.fail(number == 0 ? 1 : number, "missing [chart] section");

    Problem p;
    p.name = name;
    p.chart = read_chart(r, body["chart"], header_line["chart"]);
    const Chart& chart = p.chart;
    const int dim = static_cast<int>(chart.dim());

    std::map<std::string, int> seen;
    auto once = [&](const std::string& section, const std::string& key, int line) {
        if (!seen.emplace(section + "." + key, line).second) r.fail(line, "duplicate key '" + key + "'");
    };

    for (const auto& l : body["structure"]) {
        const auto [key, value] = assignment(r, l);
        once("structure", key, l.number);
        const std::string& s = quoted(r, value, l.number);
        if (key == "bivector") {
            p.bivector = compile(r, l.number, [&] { return MultiVector::parse(s, chart, 2); });
        } else if (key == "alpha") {
            p.alpha = compile(r, l.number, [&] { return DiffForm::parse(s, chart, 1); });
        } else if (key == "omega") {
            p.omega = compile(r, l.number, [&] { return DiffForm::parse(s, chart, 2); });
        } else if (key == "transversal") {
            p.transversal = compile(r, l.number, [&] { return MultiVector::parse(s, chart, 1); });
        } else if (key == "volume") {
            p.volume = compile(r, l.number, [&] { return DiffForm::parse(s, chart, dim); });
        } else {
            r.fail(l.number, "unknown structure key '" + key + "'");
        }
    }

    for (const auto& l : body["certificates"]) {
        const auto [key, value] = assignment(r, l);
        once("certificates", key, l.number);
        const std::string& s = quoted(r, value, l.number);
        if (key == "f") {
            p.certificate_f = compile(r, l.number, [&] { return parse_scalar(s, chart); });
        } else if (key == "nu") {
            p.certificate_nu = compile(r, l.number, [&] { return DiffForm::parse(s, chart, 1); });
        } else {
            r.fail(l.number, "unknown certificate '" + key + "'");
        }
    }

    if (header_line.count("product")) {
        std::map<std::string, std::pair<std::string, int>> kv;
        for (const auto& l : body["product"]) {
            const auto [key, value] = assignment(r, l);
            once("product", key, l.number);
            if (key != "angle" && key != "f" && key != "field" && key != "leaf") {
                r.fail(l.number, "unknown product key '" + key + "'");
            }
            kv[key] = {quoted(r, value, l.number), l.number};
        }
        const int h = header_line["product"];
        for (const char* k : {"angle", "f", "field", "leaf"}) {
            if (!kv.count(k)) r.fail(h, std::string("[product] is missing '") + k + "'");
        }
        ProductSpec spec;
        spec.line = h;
        spec.angle = kv["angle"].first;
        if (!chart.index_of(spec.angle)) r.fail(kv["angle"].second, "'" + spec.angle + "' is not a coordinate");
        spec.f = compile(r, kv["f"].second, [&] { return parse_scalar(kv["f"].first, chart); });
        spec.field = compile(r, kv["field"].second, [&] { return MultiVector::parse(kv["field"].first, chart, 1); });
        spec.leaf = compile(r, kv["leaf"].second, [&] { return MultiVector::parse(kv["leaf"].first, chart, 2); });
        p.product = std::move(spec);
    }

    if (header_line.count("mapping_torus")) {
        const int h = header_line["mapping_torus"];
        MappingTorusSpec spec;
        spec.line = h;
        spec.map = identity_map(chart);
        std::optional<DiffForm> form;
        for (const auto& l : body["mapping_torus"]) {
            const auto& t = l.tokens;
            if (t.size() == 4 && t[0].kind == TokenKind::Word && t[0].text == "map" && t[1].kind == TokenKind::Word &&
                t[2].kind == TokenKind::Equals) {
                const auto idx = chart.index_of(t[1].text);
                if (!idx) r.fail(l.number, "'" + t[1].text + "' is not a coordinate");
                once("mapping_torus", "map " + t[1].text, l.number);
                spec.map.components[*idx] =
                    compile(r, l.number, [&] { return parse_scalar(quoted(r, t[3], l.number), chart); });
                continue;
            }
            const auto [key, value] = assignment(r, l);
            if (key != "form") r.fail(l.number, "unknown mapping_torus key '" + key + "'");
            once("mapping_torus", key, l.number);
            form = compile(r, l.number, [&] { return DiffForm::parse(quoted(r, value, l.number), chart, 2); });
        }
        if (!form) r.fail(h, "[mapping_torus] is missing 'form'");
        spec.form = *form;
        p.mapping_torus = std::move(spec);
    }

    for (const auto& l : body["options"]) {
        const auto [key, value] = assignment(r, l);
        once("options", key, l.number);
        if (value.kind != TokenKind::Word) r.fail(l.number, "option values are unquoted numbers");
        const double v = r.number(value, l.number);
        if (key == "seed") {
            if (v < 0 || v != static_cast<double>(static_cast<std::uint64_t>(v))) r.fail(l.number, "seed must be a nonnegative integer");
            p.seed = static_cast<std::uint64_t>(v);
        } else if (key == "trials") {
            if (v < 1 || v > 100000 || v != static_cast<int>(v)) r.fail(l.number, "trials must be an integer in [1, 100000]");
            p.trials = static_cast<int>(v);
        } else if (key == "tolerance") {
            if (!(v > 0 && v < 1)) r.fail(l.number, "tolerance must lie in (0, 1)");
            p.tolerance = v;
        } else {
            r.fail(l.number, "unknown option '" + key + "'");
        }
    }

    const bool has_structure = p.bivector || (p.alpha && p.omega && p.transversal);
    const bool has_transversal = p.transversal || p.alpha;
    for (const auto& l : body["analyses"]) {
        for (const auto& t : l.tokens) {
            if (t.kind != TokenKind::Word) r.fail(l.number, "analysis names are bare words");
            const auto it = needs().find(t.text);
            if (it == needs().end()) r.fail(l.number, "unknown analysis '" + t.text + "'");
            if (std::any_of(p.analyses.begin(), p.analyses.end(), [&](const Requested& q) { return q.name == t.text; })) {
                r.fail(l.number, "analysis '" + t.text + "' requested twice");
            }
            const Needs& n = it->second;
            if (n.structure && !has_structure) {
                r.fail(l.number, t.text + " needs a bivector, or alpha, omega and a transversal");
            }
            if (n.adapted && (!has_transversal || dim % 2 == 0)) {
                r.fail(l.number, t.text + " needs an odd-dimensional chart and a transversal (or alpha)");
            }
            if (n.even && dim % 2 != 0) r.fail(l.number, t.text + " needs an even-dimensional chart");
            if (t.text == "modular" && !p.volume && (!has_transversal || dim % 2 == 0)) {
                r.fail(l.number, "modular needs a volume form, or an odd-dimensional chart with a transversal");
            }
            if (t.text == "product" && !p.product) r.fail(l.number, "product needs a [product] section");
            if (t.text == "mapping_torus" && !p.mapping_torus) r.fail(l.number, "mapping_torus needs a [mapping_torus] section");
            p.analyses.push_back({t.text, l.number});
        }
    }
    return p;
}

Problem load_problem(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_problem(ss.str(), path);
}

}  // namespace corank
