#include "gyrobundle/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace gyrobundle {

std::string to_string(Mode m) {
    switch (m) {
        case Mode::Dynamic: return "dynamic";
        case Mode::Kinematic: return "kinematic";
        case Mode::Reconstruct: return "reconstruct";
        case Mode::CompareSrj: return "compare_srj";
        case Mode::Verify: return "verify";
    }
    return "dynamic";
}

Mode parse_mode(std::string_view name) {
    for (Mode m : {Mode::Dynamic, Mode::Kinematic, Mode::Reconstruct, Mode::CompareSrj,
                   Mode::Verify}) {
        if (name == to_string(m)) {
            return m;
        }
    }
    throw std::invalid_argument("unknown mode '" + std::string(name) + "'");
}

bool operator==(const Scenario& a, const Scenario& b) {
    return a.params == b.params && a.initial.R_s.matrix() == b.initial.R_s.matrix() &&
           a.initial.shape == b.initial.shape && a.initial.Omega_s == b.initial.Omega_s &&
           a.mode == b.mode && a.schedule == b.schedule && a.integrator == b.integrator &&
           a.seed == b.seed && a.trials == b.trials && a.mu == b.mu &&
           a.thresholds == b.thresholds;
}

namespace {

struct Entry {
    std::string value;
    int line = 0;
};

struct Section {
    int line = 0;
    std::map<std::string, Entry> keys;
};

const std::map<std::string, std::set<std::string>>& allowed_keys() {
    static const std::map<std::string, std::set<std::string>> keys = {
        {"scenario",
         {"mode", "seed", "trials", "mu", "tol_mu_drift", "tol_ke_drift", "tol_srj_residual",
          "tol_term_residual", "tol_axiom", "tol_holonomy_match"}},
        {"params", {"Jx", "Jz", "It", "Ig", "Is_g", "I_sc"}},
        {"initial", {"R_s", "beta", "gamma", "Omega_s", "beta_dot", "gamma_dot"}},
        {"integrator", {"dt", "steps", "scheme", "reproject_every"}},
        {"schedule", {"columns"}},
    };
    return keys;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        out.push_back(trim(item));
    }
    return out;
}

class Parser {
public:
    Parser(const std::string& text, std::string source) : source_(std::move(source)) {
        read(text);
    }

    Scenario build();

private:
    [[noreturn]] void fail(int line, const std::string& msg) const {
        throw ScenarioError(source_ + ":" + std::to_string(line) + ": " + msg);
    }

    void read(const std::string& text);

    const Entry* find(const std::string& section, const std::string& key) const {
        auto s = sections_.find(section);
        if (s == sections_.end()) {
            return nullptr;
        }
        auto k = s->second.keys.find(key);
        return k == s->second.keys.end() ? nullptr : &k->second;
    }

    int section_line(const std::string& section) const {
        auto s = sections_.find(section);
        return s == sections_.end() ? last_line_ : s->second.line;
    }

    const Entry& require(const std::string& section, const std::string& key) const {
        const Entry* e = find(section, key);
        if (!e) {
            fail(section_line(section), "missing field '" + key + "' in [" + section + "]");
        }
        return *e;
    }

    double number(const std::string& text, int line) const {
        const char* first = text.data();
        const char* last = first + text.size();
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last || text.empty() || !std::isfinite(v)) {
            fail(line, "expected a finite number, got '" + text + "'");
        }
        return v;
    }

    double number(const Entry& e) const { return number(e.value, e.line); }

    long long integer(const Entry& e) const {
        long long v = 0;
        auto [ptr, ec] = std::from_chars(e.value.data(), e.value.data() + e.value.size(), v);
        if (ec != std::errc() || ptr != e.value.data() + e.value.size() || e.value.empty()) {
            fail(e.line, "expected an integer, got '" + e.value + "'");
        }
        return v;
    }

    std::vector<double> numbers(const Entry& e, std::size_t n) const {
        const auto parts = split_commas(e.value);
        if (parts.size() != n) {
            fail(e.line, "expected " + std::to_string(n) + " comma-separated values, got " +
                             std::to_string(parts.size()));
        }
        std::vector<double> out;
        for (const auto& p : parts) {
            out.push_back(number(p, e.line));
        }
        return out;
    }

    double optional_number(const std::string& section, const std::string& key,
                           double fallback) const {
        const Entry* e = find(section, key);
        return e ? number(*e) : fallback;
    }

    Matrix3 matrix(const Entry& e) const {
        const auto v = numbers(e, 9);
        Matrix3 m;
        m << v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8];
        return m;
    }

    void build_params(Scenario& sc) const;
    void build_initial(Scenario& sc) const;
    void build_schedule(Scenario& sc) const;

    std::string source_;
    std::map<std::string, Section> sections_;
    std::vector<std::string> columns_;
    int columns_line_ = 0;
    std::vector<std::pair<int, std::vector<double>>> rows_;
    int last_line_ = 1;
};

void Parser::read(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    std::string current;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                fail(line_no, "malformed section header '" + line + "'");
            }
            current = trim(line.substr(1, line.size() - 2));
            if (!allowed_keys().count(current)) {
                fail(line_no, "unknown section [" + current + "]");
            }
            if (sections_.count(current)) {
                fail(line_no, "duplicate section [" + current + "]");
            }
            sections_[current].line = line_no;
            continue;
        }
        if (current.empty()) {
            fail(line_no, "entry outside of any section");
        }
        const auto eq = line.find('=');
        if (current == "schedule" && eq == std::string::npos) {
            if (columns_.empty()) {
                fail(line_no, "schedule rows must follow a 'columns =' line");
            }
            const auto parts = split_commas(line);
            if (parts.size() != columns_.size()) {
                fail(line_no, "schedule row has " + std::to_string(parts.size()) +
                                  " values, expected " + std::to_string(columns_.size()));
            }
            std::vector<double> row;
            for (const auto& p : parts) {
                row.push_back(number(p, line_no));
            }
            rows_.emplace_back(line_no, std::move(row));
            continue;
        }
        if (eq == std::string::npos) {
            fail(line_no, "expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!allowed_keys().at(current).count(key)) {
            fail(line_no, "unknown field '" + key + "' in [" + current + "]");
        }
        auto& keys = sections_[current].keys;
        if (keys.count(key)) {
            fail(line_no, "duplicate field '" + key + "'");
        }
        keys[key] = {value, line_no};
        if (current == "schedule") {
            if (!rows_.empty()) {
                fail(line_no, "'columns' must precede schedule rows");
            }
            columns_ = split_commas(value);
            columns_line_ = line_no;
        }
    }
    last_line_ = std::max(line_no, 1);
}

void Parser::build_params(Scenario& sc) const {
    InertiaParams& p = sc.params;
    const std::pair<const char*, double InertiaParams::*> scalars[] = {
        {"Jx", &InertiaParams::Jx}, {"Jz", &InertiaParams::Jz},   {"It", &InertiaParams::It},
        {"Ig", &InertiaParams::Ig}, {"Is_g", &InertiaParams::Is_g}};
    for (const auto& [name, member] : scalars) {
        const Entry& e = require("params", name);
        p.*member = number(e);
        if (!(p.*member > 0.0)) {
            fail(e.line, std::string("inertia parameter ") + name + " must be positive");
        }
    }
    const Entry& isc = require("params", "I_sc");
    p.I_sc = matrix(isc);
    try {
        validate(p);
    } catch (const std::invalid_argument& ex) {
        fail(isc.line, ex.what());
    }
}

void Parser::build_initial(Scenario& sc) const {
    SystemState& s = sc.initial;
    if (const Entry* e = find("initial", "R_s")) {
        const Matrix3 m = matrix(*e);
        const double ortho = (m.transpose() * m - Matrix3::Identity()).norm();
        const double det = m.determinant();
        if (ortho <= 1e-12 && std::abs(det - 1.0) <= 1e-12) {
            s.R_s = Rotation::from_matrix(m);
        } else if (ortho <= kAttitudeRepairLimit && det > 0.0) {
            s.R_s = project_to_so3(m);
        } else {
            std::ostringstream msg;
            msg << "initial attitude not orthonormal (error " << ortho << ", det " << det << ")";
            fail(e->line, msg.str());
        }
    }
    s.shape.beta = optional_number("initial", "beta", 0.0);
    s.shape.gamma = optional_number("initial", "gamma", 0.0);
    s.shape.beta_dot = optional_number("initial", "beta_dot", 0.0);
    s.shape.gamma_dot = optional_number("initial", "gamma_dot", 0.0);
    if (const Entry* e = find("initial", "Omega_s")) {
        const auto v = numbers(*e, 3);
        s.Omega_s = Vector3(v[0], v[1], v[2]);
    }
}

void Parser::build_schedule(Scenario& sc) const {
    std::vector<std::string> expected;
    switch (sc.mode) {
        case Mode::Dynamic: expected = {"t", "tau_g", "tau_w"}; break;
        case Mode::Kinematic: expected = {"t", "u_beta", "u_gamma"}; break;
        case Mode::Reconstruct: expected = {"t", "beta", "gamma", "beta_dot", "gamma_dot"}; break;
        default: break;
    }
    const bool present = sections_.count("schedule") > 0;
    const bool needed = sc.mode == Mode::Kinematic || sc.mode == Mode::Reconstruct;
    if (!present) {
        if (needed) {
            fail(last_line_, "mode " + to_string(sc.mode) + " requires a [schedule] section");
        }
        return;
    }
    if (expected.empty()) {
        fail(section_line("schedule"), "mode " + to_string(sc.mode) + " takes no schedule");
    }
    if (columns_.empty()) {
        fail(section_line("schedule"), "missing field 'columns' in [schedule]");
    }
    if (columns_ != expected) {
        std::string want;
        for (const auto& c : expected) {
            want += (want.empty() ? "" : ", ") + c;
        }
        fail(columns_line_, "schedule columns must be: " + want);
    }
    if (rows_.size() < 2) {
        fail(columns_line_, "schedule needs at least two rows");
    }
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (i > 0 && !(rows_[i].second[0] > rows_[i - 1].second[0])) {
            fail(rows_[i].first, "schedule times must be strictly increasing");
        }
        rows.push_back(rows_[i].second);
    }
    sc.schedule = SampledSchedule(columns_, std::move(rows));

    const double t_end = sc.integrator.dt * sc.integrator.steps;
    const double t_first = rows_.front().second[0];
    const double t_last = rows_.back().second[0];
    const double tol = 1e-9 * std::max(1.0, t_end);
    if (t_first > tol || t_last < t_end - tol) {
        std::ostringstream msg;
        msg << "inconsistent schedule length: samples cover [" << t_first << ", " << t_last
            << "] but the run needs [0, " << t_end << "]";
        fail(columns_line_, msg.str());
    }
    if (sc.mode == Mode::Reconstruct && !sc.schedule.uniform()) {
        fail(columns_line_, "reconstruct schedule must be uniformly sampled");
    }
}

Scenario Parser::build() {
    Scenario sc;
    const Entry& mode = require("scenario", "mode");
    try {
        sc.mode = parse_mode(mode.value);
    } catch (const std::invalid_argument& ex) {
        fail(mode.line, ex.what());
    }
    if (const Entry* e = find("scenario", "seed")) {
        const long long v = integer(*e);
        if (v < 0) {
            fail(e->line, "seed must be non-negative");
        }
        sc.seed = static_cast<std::uint64_t>(v);
    }
    if (const Entry* e = find("scenario", "trials")) {
        const long long v = integer(*e);
        if (v < 1 || v > 100000000) {
            fail(e->line, "trials must be in [1, 1e8]");
        }
        sc.trials = static_cast<int>(v);
    }
    if (const Entry* e = find("scenario", "mu")) {
        const auto v = numbers(*e, 3);
        sc.mu = Vector3(v[0], v[1], v[2]);
    }
    Thresholds& th = sc.thresholds;
    th.mu_drift = optional_number("scenario", "tol_mu_drift", th.mu_drift);
    th.ke_drift = optional_number("scenario", "tol_ke_drift", th.ke_drift);
    th.srj_residual = optional_number("scenario", "tol_srj_residual", th.srj_residual);
    th.term_residual = optional_number("scenario", "tol_term_residual", th.term_residual);
    th.axiom = optional_number("scenario", "tol_axiom", th.axiom);
    th.holonomy_match = optional_number("scenario", "tol_holonomy_match", th.holonomy_match);

    if (sc.mode != Mode::Verify || sections_.count("params")) {
        build_params(sc);
    }
    build_initial(sc);

    IntegratorConfig& cfg = sc.integrator;
    if (const Entry* e = find("integrator", "dt")) {
        cfg.dt = number(*e);
        if (!(cfg.dt > 0.0)) {
            fail(e->line, "dt must be positive");
        }
    }
    if (const Entry* e = find("integrator", "steps")) {
        const long long v = integer(*e);
        if (v < 1 || v > 2000000000LL) {
            fail(e->line, "steps must be a positive integer");
        }
        cfg.steps = static_cast<int>(v);
    }
    if (const Entry* e = find("integrator", "scheme")) {
        try {
            cfg.scheme = parse_scheme(e->value);
        } catch (const std::invalid_argument& ex) {
            fail(e->line, ex.what());
        }
    }
    if (const Entry* e = find("integrator", "reproject_every")) {
        const long long v = integer(*e);
        if (v < 1 || v > 2000000000LL) {
            fail(e->line, "reproject_every must be a positive integer");
        }
        cfg.reproject_every = static_cast<int>(v);
    }
    build_schedule(sc);
    return sc;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::string fmt(const Matrix3& m) {
    std::string out;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            out += (out.empty() ? "" : ", ") + fmt(m(r, c));
        }
    }
    return out;
}

std::string fmt(const Vector3& v) { return fmt(v.x()) + ", " + fmt(v.y()) + ", " + fmt(v.z()); }

}  // namespace

Scenario parse_scenario_text(const std::string& text, const std::string& source) {
    return Parser(text, source).build();
}

Scenario parse_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ScenarioError(path.string() + ":0: cannot open scenario file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str(), path.string());
}

std::string serialize_scenario(const Scenario& s) {
    std::ostringstream os;
    os << "[scenario]\n"
       << "mode = " << to_string(s.mode) << "\n"
       << "seed = " << s.seed << "\n"
       << "trials = " << s.trials << "\n";
    if (s.mu) {
        os << "mu = " << fmt(*s.mu) << "\n";
    }
    os << "tol_mu_drift = " << fmt(s.thresholds.mu_drift) << "\n"
       << "tol_ke_drift = " << fmt(s.thresholds.ke_drift) << "\n"
       << "tol_srj_residual = " << fmt(s.thresholds.srj_residual) << "\n"
       << "tol_term_residual = " << fmt(s.thresholds.term_residual) << "\n"
       << "tol_axiom = " << fmt(s.thresholds.axiom) << "\n"
       << "tol_holonomy_match = " << fmt(s.thresholds.holonomy_match) << "\n\n";

    const InertiaParams& p = s.params;
    if (!(s.mode == Mode::Verify && p == InertiaParams{})) {
        os << "[params]\n"
           << "Jx = " << fmt(p.Jx) << "\n"
           << "Jz = " << fmt(p.Jz) << "\n"
           << "It = " << fmt(p.It) << "\n"
           << "Ig = " << fmt(p.Ig) << "\n"
           << "Is_g = " << fmt(p.Is_g) << "\n"
           << "I_sc = " << fmt(p.I_sc) << "\n\n";
    }

    const SystemState& x = s.initial;
    os << "[initial]\n"
       << "R_s = " << fmt(x.R_s.matrix()) << "\n"
       << "beta = " << fmt(x.shape.beta) << "\n"
       << "gamma = " << fmt(x.shape.gamma) << "\n"
       << "Omega_s = " << fmt(x.Omega_s) << "\n"
       << "beta_dot = " << fmt(x.shape.beta_dot) << "\n"
       << "gamma_dot = " << fmt(x.shape.gamma_dot) << "\n\n";

    os << "[integrator]\n"
       << "dt = " << fmt(s.integrator.dt) << "\n"
       << "steps = " << s.integrator.steps << "\n"
       << "scheme = " << to_string(s.integrator.scheme) << "\n"
       << "reproject_every = " << s.integrator.reproject_every << "\n";

    if (!s.schedule.empty()) {
        os << "\n[schedule]\ncolumns = ";
        for (std::size_t i = 0; i < s.schedule.columns().size(); ++i) {
            os << (i ? ", " : "") << s.schedule.columns()[i];
        }
        os << "\n";
        for (const auto& row : s.schedule.rows()) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                os << (i ? ", " : "") << fmt(row[i]);
            }
            os << "\n";
        }
    }
    return os.str();
}

}  // namespace gyrobundle
