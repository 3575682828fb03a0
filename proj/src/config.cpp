#include "chlab/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace chlab::config {

ConfigError::ConfigError(std::string key, const std::string& what)
    : InvalidArgument(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Cuts a trailing comment, respecting quoted strings.
std::string_view strip_comment(std::string_view line) {
    char quote = 0;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quote) {
            if (c == '\\' && quote == '"') ++i;
            else if (c == quote) quote = 0;
        } else if (c == '"' || c == '\'') {
            quote = c;
        } else if (c == '#') {
            return line.substr(0, i);
        }
    }
    return line;
}

int bracket_balance(std::string_view s) {
    int depth = 0;
    char quote = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (quote) {
            if (c == '\\' && quote == '"') ++i;
            else if (c == quote) quote = 0;
        } else if (c == '"' || c == '\'') {
            quote = c;
        } else if (c == '[') {
            ++depth;
        } else if (c == ']') {
            --depth;
        }
    }
    return depth;
}

bool valid_key(std::string_view k) {
    if (k.empty()) return false;
    std::size_t part = 0;
    for (char c : k) {
        if (c == '.') {
            if (part == 0) return false;
            part = 0;
            continue;
        }
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
        ++part;
    }
    return part > 0;
}

struct Scalar {
    std::variant<bool, std::int64_t, double, std::string> v;
};

std::string parse_string(std::string_view s, const std::string& key) {
    const char q = s.front();
    std::string out;
    std::size_t i = 1;
    for (; i < s.size(); ++i) {
        const char c = s[i];
        if (c == q) break;
        if (q == '"' && c == '\\') {
            if (++i >= s.size()) throw ConfigError(key, "unterminated escape");
            switch (s[i]) {
                case 'n': out += '\n'; break;
                case 't': out += '\t'; break;
                case '"': out += '"'; break;
                case '\\': out += '\\'; break;
                default: throw ConfigError(key, std::string("unsupported escape \\") + s[i]);
            }
        } else {
            out += c;
        }
    }
    if (i >= s.size()) throw ConfigError(key, "unterminated string");
    if (!trim(s.substr(i + 1)).empty()) throw ConfigError(key, "unexpected text after string");
    return out;
}

Scalar parse_scalar(std::string_view s, const std::string& key) {
    s = trim(s);
    if (s.empty()) throw ConfigError(key, "missing value");
    if (s.front() == '"' || s.front() == '\'') return {parse_string(s, key)};
    if (s == "true") return {true};
    if (s == "false") return {false};
    std::string t;
    for (char c : s) {
        if (c != '_') t += c;
    }
    if (t == "inf" || t == "+inf") return {HUGE_VAL};
    if (t == "-inf") return {-HUGE_VAL};
    if (t == "nan" || t == "+nan" || t == "-nan") return {std::nan("")};
    const char* b = t.data();
    const char* e = t.data() + t.size();
    if (*b == '+') ++b;
    const bool integral = t.find_first_of(".eE") == std::string::npos;
    if (integral) {
        std::int64_t iv = 0;
        const auto r = std::from_chars(b, e, iv);
        if (r.ec == std::errc() && r.ptr == e) return {iv};
    }
    double dv = 0.0;
    const auto r = std::from_chars(b, e, dv);
    if (r.ec != std::errc() || r.ptr != e) throw ConfigError(key, "cannot parse value '" + std::string(s) + "'");
    return {dv};
}

Value parse_value(std::string_view s, const std::string& key) {
    s = trim(s);
    if (s.empty()) throw ConfigError(key, "missing value");
    if (s.front() != '[') {
        const auto sc = parse_scalar(s, key);
        return std::visit([](const auto& x) -> Value { return x; }, sc.v);
    }
    if (s.back() != ']') throw ConfigError(key, "unterminated array");
    const auto body = s.substr(1, s.size() - 2);
    std::vector<std::string_view> items;
    char quote = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < body.size(); ++i) {
        const char c = body[i];
        if (quote) {
            if (c == '\\' && quote == '"') ++i;
            else if (c == quote) quote = 0;
        } else if (c == '"' || c == '\'') {
            quote = c;
        } else if (c == '[' || c == ']') {
            throw ConfigError(key, "nested arrays are not supported");
        } else if (c == ',') {
            items.push_back(trim(body.substr(start, i - start)));
            start = i + 1;
        }
    }
    const auto last = trim(body.substr(start));
    if (!last.empty()) items.push_back(last);
    std::vector<double> nums;
    std::vector<std::string> strs;
    for (auto item : items) {
        if (item.empty()) throw ConfigError(key, "empty array element");
        const auto sc = parse_scalar(item, key);
        if (const auto* i = std::get_if<std::int64_t>(&sc.v)) nums.push_back(static_cast<double>(*i));
        else if (const auto* d = std::get_if<double>(&sc.v)) nums.push_back(*d);
        else if (const auto* str = std::get_if<std::string>(&sc.v)) strs.push_back(*str);
        else throw ConfigError(key, "arrays of booleans are not supported");
    }
    if (!nums.empty() && !strs.empty()) throw ConfigError(key, "mixed array element types");
    if (!strs.empty()) return strs;
    return nums;
}

void insert(Table& table, const std::string& key, Value v) {
    if (!table.emplace(key, std::move(v)).second) throw ConfigError(key, "duplicate key");
}

}  // namespace

Table parse_toml(std::string_view text) {
    Table table;
    std::string prefix;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto line = trim(strip_comment(raw));
        if (line.empty()) continue;
        const std::string where = "line " + std::to_string(lineno);
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) throw ConfigError("", where + ": malformed table header");
            const auto name = trim(line.substr(1, line.size() - 2));
            if (!valid_key(name)) throw ConfigError("", where + ": invalid table name '" + std::string(name) + "'");
            prefix = std::string(name) + ".";
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError("", where + ": expected key = value");
        const auto k = trim(line.substr(0, eq));
        if (!valid_key(k)) throw ConfigError("", where + ": invalid key '" + std::string(k) + "'");
        const std::string key = prefix + std::string(k);
        std::string value(trim(line.substr(eq + 1)));
        while (bracket_balance(value) > 0) {
            if (!std::getline(in, raw)) throw ConfigError(key, "unterminated array");
            ++lineno;
            value += ' ';
            value += trim(strip_comment(raw));
        }
        insert(table, key, parse_value(value, key));
    }
    return table;
}

Table load_toml(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError("--config", "cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_toml(ss.str());
}

void apply_override(Table& table, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) throw ConfigError("--set", "expected key=value, got '" + std::string(assignment) + "'");
    const auto k = trim(assignment.substr(0, eq));
    if (!valid_key(k)) throw ConfigError("--set", "invalid key '" + std::string(k) + "'");
    const std::string key(k);
    const auto v = trim(assignment.substr(eq + 1));
    Value value;
    try {
        value = parse_value(v, key);
    } catch (const ConfigError&) {
        if (v.empty() || v.find_first_of("\"'[]") != std::string_view::npos) throw;
        value = std::string(v);
    }
    table[key] = std::move(value);
}

namespace {

class Resolver {
public:
    explicit Resolver(const Table& t) : table_(t) {}

    const Value* find(const std::string& key) {
        const auto it = table_.find(key);
        if (it == table_.end()) return nullptr;
        used_.insert(key);
        return &it->second;
    }

    bool number(const std::string& key, double& out) {
        const Value* v = find(key);
        if (!v) return false;
        if (const auto* i = std::get_if<std::int64_t>(v)) out = static_cast<double>(*i);
        else if (const auto* d = std::get_if<double>(v)) out = *d;
        else throw ConfigError(key, "expected a number");
        if (!std::isfinite(out)) throw ConfigError(key, "must be finite");
        return true;
    }

    template <class Int>
    bool integer(const std::string& key, Int& out, long long min) {
        const Value* v = find(key);
        if (!v) return false;
        long long x = 0;
        if (const auto* i = std::get_if<std::int64_t>(v)) {
            x = *i;
        } else if (const auto* d = std::get_if<double>(v); d && std::floor(*d) == *d && std::abs(*d) < 9e15) {
            x = static_cast<long long>(*d);
        } else {
            throw ConfigError(key, "expected an integer");
        }
        if (x < min) throw ConfigError(key, "must be at least " + std::to_string(min));
        out = static_cast<Int>(x);
        return true;
    }

    bool string(const std::string& key, std::string& out) {
        const Value* v = find(key);
        if (!v) return false;
        const auto* s = std::get_if<std::string>(v);
        if (!s) throw ConfigError(key, "expected a string");
        out = *s;
        return true;
    }

    bool boolean(const std::string& key, bool& out) {
        const Value* v = find(key);
        if (!v) return false;
        const auto* b = std::get_if<bool>(v);
        if (!b) throw ConfigError(key, "expected true or false");
        out = *b;
        return true;
    }

    bool numbers(const std::string& key, std::vector<double>& out) {
        const Value* v = find(key);
        if (!v) return false;
        if (const auto* a = std::get_if<std::vector<double>>(v)) out = *a;
        else if (const auto* i = std::get_if<std::int64_t>(v)) out = {static_cast<double>(*i)};
        else if (const auto* d = std::get_if<double>(v)) out = {*d};
        else throw ConfigError(key, "expected an array of numbers");
        for (double x : out) {
            if (!std::isfinite(x)) throw ConfigError(key, "entries must be finite");
        }
        return true;
    }

    void reject_unknown() const {
        for (const auto& [k, v] : table_) {
            if (!used_.count(k)) throw ConfigError(k, "unknown key");
        }
    }

private:
    const Table& table_;
    std::set<std::string> used_;
};

void read_profile(Resolver& r, const std::string& prefix, experiments::Profile& p) {
    r.string(prefix + "kind", p.kind);
    r.number(prefix + "amplitude", p.amplitude);
    r.number(prefix + "centre", p.centre);
    r.number(prefix + "width", p.width);
    r.number(prefix + "delta", p.delta);
    r.numbers(prefix + "p", p.p);
    r.numbers(prefix + "q", p.q);
    static const std::vector<std::string> kinds{"gaussian", "bump", "peakon", "multipeakon"};
    if (std::find(kinds.begin(), kinds.end(), p.kind) == kinds.end()) {
        throw ConfigError(prefix + "kind", "'" + p.kind + "' is not one of gaussian, bump, peakon, multipeakon");
    }
    if ((p.kind == "gaussian" || p.kind == "bump") && !(p.width > 0.0)) {
        throw ConfigError(prefix + "width", "must be positive");
    }
    if ((p.kind == "peakon" || p.kind == "multipeakon") && !(p.delta > 0.0)) {
        throw ConfigError(prefix + "delta", "must be positive for peaked profiles");
    }
    if (p.kind == "multipeakon") {
        if (p.p.empty()) throw ConfigError(prefix + "p", "must list at least one amplitude");
        if (p.p.size() != p.q.size()) throw ConfigError(prefix + "q", "must have as many entries as " + prefix + "p");
        for (std::size_t i = 1; i < p.q.size(); ++i) {
            if (!(p.q[i] > p.q[i - 1])) throw ConfigError(prefix + "q", "positions must be strictly increasing");
        }
    }
}

}  // namespace

RunConfig resolve(const Table& table) {
    RunConfig c;
    Resolver r(table);

    r.string("command", c.command);
    if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end()) {
        throw ConfigError("command", "'" + c.command +
                                         "' is not one of simulate, picard, stability, dependence, besov-audit, "
                                         "peakon, w1inf-demo");
    }
    r.string("equation", c.equation);
    if (c.equation != "ch" && c.equation != "novikov" && c.equation != "2ch") {
        throw ConfigError("equation", "'" + c.equation + "' is not one of ch, novikov, 2ch");
    }

    if (const Value* v = r.find("seed")) {
        if (const auto* i = std::get_if<std::int64_t>(v); i && *i >= 0) {
            c.seed = static_cast<std::uint64_t>(*i);
        } else if (const auto* s = std::get_if<std::string>(v)) {
            const auto res = std::from_chars(s->data(), s->data() + s->size(), c.seed);
            if (res.ec != std::errc() || res.ptr != s->data() + s->size()) {
                throw ConfigError("seed", "expected an unsigned 64-bit integer");
            }
        } else {
            throw ConfigError("seed", "expected an unsigned 64-bit integer");
        }
    }

    r.number("grid.L", c.L);
    if (!(c.L > 0.0)) throw ConfigError("grid.L", "must be positive");
    r.integer("grid.N", c.N, 8);
    if ((c.N & (c.N - 1)) != 0) throw ConfigError("grid.N", "must be a power of two");

    std::string out;
    if (r.string("output.dir", out)) c.out = out;
    r.boolean("output.states", c.write_states);

    read_profile(r, "initial.", c.initial);

    auto& s = c.solver;
    r.number("solver.dt", s.dt);
    if (!(s.dt > 0.0)) throw ConfigError("solver.dt", "must be positive");
    double T = 0.0;
    if (r.number("solver.T", T)) {
        if (T < 0.0) throw ConfigError("solver.T", "must be nonnegative (0 selects the suggested horizon)");
        c.T_auto = T == 0.0;
        if (!c.T_auto) s.T = T;
    }
    r.number("solver.theta_min", s.theta_min);
    if (!(s.theta_min > 0.0 && s.theta_min < 0.5)) throw ConfigError("solver.theta_min", "must lie in (0, 1/2)");
    r.number("solver.C_cal", s.C_cal);
    if (!(s.C_cal > 0.0)) throw ConfigError("solver.C_cal", "must be positive");
    r.number("solver.p", s.p);
    if (!(s.p >= 1.0)) throw ConfigError("solver.p", "must be at least 1");
    r.integer("solver.snapshot_stride", s.snapshot_stride, 0);
    r.integer("solver.max_steps", s.max_steps, 1);
    std::string quad;
    if (r.string("solver.quadrature", quad)) {
        if (quad == "corrected") s.quadrature = Quadrature::CorrectedTrapezoid;
        else if (quad == "trapezoid") s.quadrature = Quadrature::Trapezoid;
        else throw ConfigError("solver.quadrature", "'" + quad + "' is not one of corrected, trapezoid");
    }

    r.integer("picard.n_max", c.picard.n_max, 1);
    r.number("picard.tol", c.picard.tol);
    if (!(c.picard.tol > 0.0)) throw ConfigError("picard.tol", "must be positive");
    r.integer("picard.time_steps", c.picard.time_steps, 3);

    auto& e = c.experiment;
    if (r.numbers("experiment.eps", e.eps)) {
        if (e.eps.empty()) throw ConfigError("experiment.eps", "must not be empty");
        for (std::size_t i = 0; i < e.eps.size(); ++i) {
            if (e.eps[i] < 0.0) throw ConfigError("experiment.eps", "entries must be nonnegative");
            if (i > 0 && !(e.eps[i] < e.eps[i - 1])) throw ConfigError("experiment.eps", "must be strictly decreasing");
        }
    }
    read_profile(r, "experiment.perturbation.", e.perturbation);
    r.string("experiment.rule", e.rule);
    if (e.rule != "constant" && e.rule != "amplitude" && e.rule != "mollification") {
        throw ConfigError("experiment.rule", "'" + e.rule + "' is not one of constant, amplitude, mollification");
    }
    std::vector<double> levels;
    if (r.numbers("experiment.levels", levels)) {
        if (levels.empty()) throw ConfigError("experiment.levels", "must not be empty");
        e.levels.clear();
        for (double l : levels) {
            if (std::floor(l) != l || l < 0 || l > 60) throw ConfigError("experiment.levels", "entries must be integers in [0, 60]");
            e.levels.push_back(static_cast<int>(l));
        }
    }
    r.number("experiment.delta0", e.delta0);
    if (!(e.delta0 > 0.0)) throw ConfigError("experiment.delta0", "must be positive");
    r.integer("experiment.samples", e.samples, 1);
    r.number("experiment.c", e.c);
    if (!(e.c > 0.0)) throw ConfigError("experiment.c", "must be positive");

    r.integer("audit.corpus", c.audit.corpus, 1);
    r.number("audit.log_epsilon", c.audit.log_epsilon);
    if (!(c.audit.log_epsilon > 0.0)) throw ConfigError("audit.log_epsilon", "must be positive");
    r.boolean("audit.transport", c.audit.transport);

    r.integer("peakon.M", c.peakon.M, 1);
    r.number("peakon.dt", c.peakon.dt);
    if (!(c.peakon.dt > 0.0)) throw ConfigError("peakon.dt", "must be positive");
    r.number("peakon.T", c.peakon.T);
    if (!(c.peakon.T >= 0.0)) throw ConfigError("peakon.T", "must be nonnegative");
    r.integer("peakon.stride", c.peakon.stride, 1);

    r.reject_unknown();
    return c;
}

}  // namespace chlab::config
