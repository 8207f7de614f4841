#include "uqdd/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace uqdd {

namespace {

std::string join(const std::vector<std::string>& messages) {
    std::string all = "invalid configuration:";
    for (const auto& m : messages)
        all += "\n  " + m;
    return all;
}

} // namespace

ConfigError::ConfigError(std::vector<std::string> messages)
    : std::runtime_error(join(messages)), messages_(std::move(messages)) {}

BcCase RunConfig::bc() const {
    return bc_variant == BcVariant::Mixed
               ? BcCase::mixed(bc_left, bc_right)
               : BcCase::all_dirichlet(bc_left, bc_right, bc_top, bc_bottom);
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Parser {
    std::map<std::string, std::string> values; // "section.key" -> raw value
    std::vector<std::string> errors;
    std::vector<std::string> unseen; // keys read from the file, cleared as consumed

    void fail(const std::string& msg) { errors.push_back(msg); }

    bool take(const std::string& key, std::string& out) {
        auto it = values.find(key);
        if (it == values.end())
            return false;
        out = it->second;
        unseen.erase(std::remove(unseen.begin(), unseen.end(), key), unseen.end());
        return true;
    }

    template <typename T> void number(const std::string& key, T& target) {
        std::string raw;
        if (!take(key, raw))
            return;
        T v{};
        const char* b = raw.data();
        const char* e = b + raw.size();
        auto res = std::from_chars(b, e, v);
        if (res.ec != std::errc{} || res.ptr != e) {
            fail(key + ": expected a number, got '" + raw + "'");
            return;
        }
        target = v;
    }

    void text(const std::string& key, std::string& target) {
        std::string raw;
        if (take(key, raw))
            target = raw;
    }
};

} // namespace

RunConfig parse_config(std::istream& in) {
    Parser p;
    std::string line, section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                p.fail("line " + std::to_string(line_no) + ": unterminated section header");
                continue;
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            p.fail("line " + std::to_string(line_no) + ": expected key = value");
            continue;
        }
        if (section.empty()) {
            p.fail("line " + std::to_string(line_no) + ": key outside any [section]");
            continue;
        }
        const std::string key = section + "." + trim(line.substr(0, eq));
        if (p.values.count(key)) {
            p.fail("duplicate key " + key);
            continue;
        }
        p.values[key] = trim(line.substr(eq + 1));
        p.unseen.push_back(key);
    }

    RunConfig c;
    p.number("geometry.x1_min", c.x1_min);
    p.number("geometry.x1_max", c.x1_max);
    p.number("geometry.x2_min", c.x2_min);
    p.number("geometry.x2_max", c.x2_max);
    p.number("geometry.n1", c.n1);
    p.number("geometry.n2", c.n2);

    p.number("field.a0", c.a0);
    p.number("field.sigma_a", c.sigma_a);
    p.number("field.l1", c.l1);
    p.number("field.l2", c.l2);
    {
        std::string raw;
        if (p.take("field.variance_convention", raw)) {
            if (raw == "sigma-ratio")
                c.convention = VarianceConvention::SigmaRatio;
            else if (raw == "variance-ratio")
                c.convention = VarianceConvention::VarianceRatio;
            else
                p.fail("field.variance_convention: expected sigma-ratio or variance-ratio");
        }
    }

    p.number("stochastic.dim", c.dim);
    p.number("stochastic.order", c.order);
    p.number("stochastic.level_full", c.level_full);
    p.number("stochastic.level_coarse", c.level_coarse);
    p.number("stochastic.level_adapted", c.level_adapted);
    {
        std::string raw;
        if (p.take("stochastic.reduced_dim", raw)) {
            if (raw == "auto")
                c.reduced_dim = 0;
            else {
                int v = 0;
                auto res = std::from_chars(raw.data(), raw.data() + raw.size(), v);
                if (res.ec != std::errc{} || res.ptr != raw.data() + raw.size())
                    p.fail("stochastic.reduced_dim: expected an integer or auto");
                else
                    c.reduced_dim = v;
            }
        }
    }
    p.number("stochastic.reduced_dim_tolerance", c.reduced_dim_tolerance);
    p.number("stochastic.coarse_spatial_factor", c.coarse_spatial_factor);

    p.number("partition.nx", c.nx);
    p.number("partition.ny", c.ny);

    {
        std::string raw;
        if (p.take("bc.case", raw)) {
            if (raw == "mixed")
                c.bc_variant = BcVariant::Mixed;
            else if (raw == "all-dirichlet")
                c.bc_variant = BcVariant::AllDirichlet;
            else
                p.fail("bc.case: expected mixed or all-dirichlet");
        }
    }
    p.number("bc.left", c.bc_left);
    p.number("bc.right", c.bc_right);
    p.number("bc.top", c.bc_top);
    p.number("bc.bottom", c.bc_bottom);
    p.number("bc.source", c.source);

    {
        std::string raw;
        if (p.take("pdf.points", raw)) {
            c.pdf_points.clear();
            std::stringstream ss(raw);
            std::string chunk;
            while (std::getline(ss, chunk, ';')) {
                chunk = trim(chunk);
                if (chunk.empty())
                    continue;
                std::stringstream cs(chunk);
                double x1, x2;
                if (cs >> x1 >> x2)
                    c.pdf_points.emplace_back(x1, x2);
                else {
                    p.fail("pdf.points: expected 'x1 x2' pairs separated by ';'");
                    break;
                }
            }
        }
    }
    p.number("pdf.samples", c.pdf_samples);

    p.number("run.seed", c.seed);
    p.number("run.workers", c.workers);
    p.number("run.mc_samples", c.mc_samples);
    p.text("run.out", c.out);

    for (const auto& key : p.unseen)
        p.fail("unknown key " + key);

    // consistency checks
    if (!(c.x1_max > c.x1_min) || !(c.x2_max > c.x2_min))
        p.fail("geometry: box must have positive extent");
    if (c.n1 < 2 || c.n2 < 2)
        p.fail("geometry: need n1, n2 >= 2");
    if (!(c.a0 > 0.0))
        p.fail("field.a0: must be positive");
    if (c.sigma_a < 0.0)
        p.fail("field.sigma_a: must be nonnegative");
    if (!(c.l1 > 0.0) || !(c.l2 > 0.0))
        p.fail("field: correlation lengths must be positive");
    if (c.dim < 1)
        p.fail("stochastic.dim: must be >= 1");
    if (c.dim > c.n1 * c.n2)
        p.fail("stochastic.dim: cannot exceed the node count");
    if (c.order < 0)
        p.fail("stochastic.order: must be >= 0");
    const std::pair<const char*, int> levels[] = {{"level_full", c.level_full},
                                                  {"level_coarse", c.level_coarse},
                                                  {"level_adapted", c.level_adapted}};
    for (const auto& [name, level] : levels)
        if (level < 1)
            p.fail(std::string("stochastic.") + name + ": levels are 1-based");
    if (c.level_full >= 1 && c.level_full - 1 < c.order)
        p.fail("stochastic.level_full: too low to resolve the basis order");
    if (c.level_adapted >= 1 && c.level_adapted - 1 < c.order)
        p.fail("stochastic.level_adapted: too low to resolve the basis order");
    if (c.reduced_dim != 0 && (c.reduced_dim < 1 || c.reduced_dim > c.dim))
        p.fail("stochastic.reduced_dim: must be in 1..dim or auto");
    if (!(c.reduced_dim_tolerance > 0.0) || !(c.reduced_dim_tolerance < 1.0))
        p.fail("stochastic.reduced_dim_tolerance: must be in (0, 1)");
    if (c.coarse_spatial_factor < 1)
        p.fail("stochastic.coarse_spatial_factor: must be >= 1");
    else if (c.n1 >= 2 && c.n2 >= 2 &&
             ((c.n1 - 1) % c.coarse_spatial_factor != 0 ||
              (c.n2 - 1) % c.coarse_spatial_factor != 0))
        p.fail("stochastic.coarse_spatial_factor: must divide the cell counts");
    if (c.nx < 1 || c.ny < 1)
        p.fail("partition: need nx, ny >= 1");
    else if (c.n1 >= 2 && c.n2 >= 2 && ((c.n1 - 1) % c.nx != 0 || (c.n2 - 1) % c.ny != 0))
        p.fail("partition: subdomain edges must lie on grid lines");
    if (c.pdf_points.empty())
        p.fail("pdf.points: need at least one point");
    for (const auto& [x1, x2] : c.pdf_points)
        if (!c.box().contains(x1, x2))
            p.fail("pdf.points: point outside the domain");
    if (c.pdf_samples < 100)
        p.fail("pdf.samples: need at least 100");
    if (c.workers < 0)
        p.fail("run.workers: must be >= 0");
    if (c.mc_samples < 2)
        p.fail("run.mc_samples: need at least 2");
    if (c.out.empty())
        p.fail("run.out: must not be empty");

    if (!p.errors.empty())
        throw ConfigError(std::move(p.errors));
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError({"cannot open config file: " + path});
    return parse_config(in);
}

} // namespace uqdd
