#include "boolperc/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "boolperc/errors.hpp"

namespace boolperc {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> tokens(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

double parse_double(const std::string& s, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("field '" + key + "': cannot parse number '" + s + "'");
    }
}

long parse_long(const std::string& s, const std::string& key) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("field '" + key + "': cannot parse integer '" + s + "'");
    }
}

std::vector<double> parse_grid(const std::string& s, const std::string& key) {
    std::vector<double> out;
    for (const std::string& tok : tokens(s)) out.push_back(parse_double(tok, key));
    return out;
}

struct TargetAccum {
    std::vector<std::vector<double>> ball_centers;
    std::vector<double> ball_rhos;
    std::optional<TargetSet> single;
};

void parse_target_line(TargetAccum& acc, const std::string& value, int d) {
    const auto toks = tokens(value);
    if (toks.empty()) throw ConfigError("field 'target': empty value");
    const std::string& kind = toks.front();
    if (kind == "point") {
        if (static_cast<int>(toks.size()) != d + 1)
            throw ConfigError("field 'target': point needs d coordinates");
        std::vector<double> c;
        for (int j = 0; j < d; ++j) c.push_back(parse_double(toks[1 + j], "target"));
        acc.single = TargetSet::point(std::move(c));
    } else if (kind == "ball") {
        if (static_cast<int>(toks.size()) != d + 2)
            throw ConfigError("field 'target': ball needs d coordinates and a radius");
        std::vector<double> c;
        for (int j = 0; j < d; ++j) c.push_back(parse_double(toks[1 + j], "target"));
        acc.ball_centers.push_back(std::move(c));
        acc.ball_rhos.push_back(parse_double(toks[d + 1], "target"));
    } else if (kind == "box") {
        if (static_cast<int>(toks.size()) != 2 * d + 1)
            throw ConfigError("field 'target': box needs d lo and d hi coordinates");
        std::vector<double> lo, hi;
        for (int j = 0; j < d; ++j) lo.push_back(parse_double(toks[1 + j], "target"));
        for (int j = 0; j < d; ++j) hi.push_back(parse_double(toks[1 + d + j], "target"));
        acc.single = TargetSet::box(std::move(lo), std::move(hi));
    } else {
        throw ConfigError("field 'target': unknown shape '" + kind + "'");
    }
}

std::optional<TargetSet> finish_target(TargetAccum& acc) {
    if (acc.single) {
        if (!acc.ball_centers.empty())
            throw ConfigError("field 'target': cannot mix shapes across target lines");
        return acc.single;
    }
    if (acc.ball_centers.empty()) return std::nullopt;
    if (acc.ball_centers.size() == 1)
        return TargetSet::ball(acc.ball_centers.front(), acc.ball_rhos.front());
    return TargetSet::union_of_balls(acc.ball_centers, acc.ball_rhos);
}

} // namespace

const std::vector<std::string>& experiment_kinds() {
    static const std::vector<std::string> kinds = {
        "volume-fraction", "mecke",      "theta-curve", "derivative",
        "threshold",       "rate-bound", "slab",        "stab-radius"};
    return kinds;
}

ExperimentConfig ExperimentConfig::from_text(const std::string& text) {
    ExperimentConfig cfg;
    TargetAccum target;
    std::vector<std::pair<std::string, std::string>> pending_targets;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "kind") cfg.kind = value;
        else if (key == "d") cfg.d = static_cast<int>(parse_long(value, key));
        else if (key == "master_seed") {
            try {
                std::size_t pos = 0;
                cfg.master_seed = std::stoull(value, &pos);
                if (pos != value.size()) throw std::invalid_argument(value);
            } catch (const std::exception&) {
                throw ConfigError("field 'master_seed': cannot parse unsigned integer '" + value + "'");
            }
        }
        else if (key == "out") cfg.out_dir = value;
        else if (key == "workers") cfg.workers = static_cast<int>(parse_long(value, key));
        else if (key == "reps") cfg.reps = static_cast<std::size_t>(parse_long(value, key));
        else if (key == "sigma") cfg.sigma = parse_double(value, key);
        else if (key == "hard_cap") cfg.hard_cap = parse_double(value, key);
        else if (key == "measure") {
            const auto toks = tokens(value);
            if (toks.size() == 3 && toks[0] == "atom")
                cfg.atoms.push_back({parse_double(toks[1], key), parse_double(toks[2], key)});
            else if (toks.size() == 4 && toks[0] == "segment")
                cfg.segments.push_back({parse_double(toks[1], key), parse_double(toks[2], key),
                                        parse_double(toks[3], key)});
            else
                throw ConfigError("field 'measure': expected 'atom R W' or 'segment LO HI W'");
        } else if (key == "target") pending_targets.emplace_back(key, value);
        else if (key == "t") cfg.t = parse_double(value, key);
        else if (key == "dt") cfg.dt = parse_double(value, key);
        else if (key == "delta") cfg.delta = parse_double(value, key);
        else if (key == "n") cfg.n = parse_double(value, key);
        else if (key == "tol") cfg.tol = parse_double(value, key);
        else if (key == "tc_hat") cfg.tc_hat = parse_double(value, key);
        else if (key == "length") cfg.length = parse_double(value, key);
        else if (key == "region_radius") cfg.region_radius = parse_double(value, key);
        else if (key == "box_half_width") cfg.box_half_width = parse_double(value, key);
        else if (key == "mecke_m") cfg.mecke_m = parse_long(value, key);
        else if (key == "t_grid") cfg.t_grid = parse_grid(value, key);
        else if (key == "sizes") cfg.sizes = parse_grid(value, key);
        else if (key == "k_grid") cfg.k_grid = parse_grid(value, key);
        else if (key == "mc_points") cfg.mc_points = static_cast<std::size_t>(parse_long(value, key));
        else if (key == "n_levels") cfg.n_levels = static_cast<int>(parse_long(value, key));
        else if (key == "drift_reps") cfg.drift_reps = static_cast<std::size_t>(parse_long(value, key));
        else throw ConfigError("unknown field '" + key + "'");
    }
    for (const auto& [key, value] : pending_targets) parse_target_line(target, value, cfg.d);
    cfg.target = finish_target(target);
    return cfg;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    ExperimentConfig cfg;
    auto fail = [](const std::string& field, const std::string& why) -> ConfigError {
        return ConfigError("field '" + field + "': " + why);
    };
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "kind") cfg.kind = value.get<std::string>();
            else if (key == "d") cfg.d = value.get<int>();
            else if (key == "master_seed") cfg.master_seed = value.get<std::uint64_t>();
            else if (key == "out") cfg.out_dir = value.get<std::string>();
            else if (key == "workers") cfg.workers = value.get<int>();
            else if (key == "reps") cfg.reps = value.get<std::size_t>();
            else if (key == "sigma") cfg.sigma = value.get<double>();
            else if (key == "hard_cap") cfg.hard_cap = value.get<double>();
            else if (key == "measure") {
                for (const auto& e : value) {
                    const std::string mk = e.at("kind").get<std::string>();
                    if (mk == "atom")
                        cfg.atoms.push_back({e.at("r").get<double>(), e.at("w").get<double>()});
                    else if (mk == "segment")
                        cfg.segments.push_back({e.at("lo").get<double>(), e.at("hi").get<double>(),
                                                e.at("w").get<double>()});
                    else
                        throw fail("measure", "unknown entry kind '" + mk + "'");
                }
            } else if (key == "target") {
                const std::string tk = value.at("kind").get<std::string>();
                if (tk == "point")
                    cfg.target = TargetSet::point(value.at("center").get<std::vector<double>>());
                else if (tk == "ball")
                    cfg.target = TargetSet::ball(value.at("center").get<std::vector<double>>(),
                                                 value.at("rho").get<double>());
                else if (tk == "box")
                    cfg.target = TargetSet::box(value.at("lo").get<std::vector<double>>(),
                                                value.at("hi").get<std::vector<double>>());
                else if (tk == "union-of-balls") {
                    std::vector<std::vector<double>> centers;
                    std::vector<double> rhos;
                    for (const auto& ball : value.at("balls")) {
                        centers.push_back(ball.at("center").get<std::vector<double>>());
                        rhos.push_back(ball.at("rho").get<double>());
                    }
                    cfg.target = TargetSet::union_of_balls(std::move(centers), std::move(rhos));
                } else
                    throw fail("target", "unknown shape '" + tk + "'");
            } else if (key == "t") cfg.t = value.get<double>();
            else if (key == "dt") cfg.dt = value.get<double>();
            else if (key == "delta") cfg.delta = value.get<double>();
            else if (key == "n") cfg.n = value.get<double>();
            else if (key == "tol") cfg.tol = value.get<double>();
            else if (key == "tc_hat") cfg.tc_hat = value.get<double>();
            else if (key == "length") cfg.length = value.get<double>();
            else if (key == "region_radius") cfg.region_radius = value.get<double>();
            else if (key == "box_half_width") cfg.box_half_width = value.get<double>();
            else if (key == "mecke_m") cfg.mecke_m = value.get<long>();
            else if (key == "t_grid") cfg.t_grid = value.get<std::vector<double>>();
            else if (key == "sizes") cfg.sizes = value.get<std::vector<double>>();
            else if (key == "k_grid") cfg.k_grid = value.get<std::vector<double>>();
            else if (key == "mc_points") cfg.mc_points = value.get<std::size_t>();
            else if (key == "n_levels") cfg.n_levels = value.get<int>();
            else if (key == "drift_reps") cfg.drift_reps = value.get<std::size_t>();
            else throw ConfigError("unknown field '" + key + "'");
        } catch (const nlohmann::json::exception& e) {
            throw fail(key, e.what());
        }
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (path.extension() == ".json" || (first != std::string::npos && text[first] == '{'))
        return from_json(nlohmann::json::parse(text));
    return from_text(text);
}

ExperimentConfig ExperimentConfig::resolved() const {
    ExperimentConfig cfg = *this;
    const double b = cfg.measure().support_bound();
    if (cfg.kind == "derivative" && !cfg.dt && cfg.t) cfg.dt = *cfg.t / 40.0;
    if ((cfg.kind == "rate-bound") && !cfg.delta) cfg.delta = b / 50.0;
    if (cfg.kind == "mecke" && !cfg.region_radius) cfg.region_radius = 1.5 * b;
    if (cfg.kind == "slab" && !cfg.length) cfg.length = 12.0 * b;
    if (cfg.kind == "stab-radius") {
        if (!cfg.box_half_width) cfg.box_half_width = 14.0 * b;
        if (!cfg.target) cfg.target = TargetSet::point(std::vector<double>(cfg.d, 0.0));
    }
    if (cfg.kind == "threshold" && !cfg.tol) cfg.tol = 0.01;
    if (cfg.drift_reps == 0) cfg.drift_reps = std::max<std::size_t>(200, cfg.reps / 10);
    return cfg;
}

void ExperimentConfig::validate() const {
    const auto& kinds = experiment_kinds();
    if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end())
        throw ConfigError("field 'kind': unknown experiment kind '" + kind + "'");
    if (d < 2) throw ConfigError("field 'd': dimension must be at least 2");
    if (reps < 2) throw ConfigError("field 'reps': need at least 2 replications");
    if (workers < 1) throw ConfigError("field 'workers': must be at least 1");
    if (!(sigma > 0)) throw ConfigError("field 'sigma': must be positive");
    if (atoms.empty() && segments.empty())
        throw ConfigError("field 'measure': at least one atom or segment is required");
    measure(); // surfaces invalid component values

    auto need = [&](bool ok, const std::string& field) {
        if (!ok) throw ConfigError("field '" + field + "': required for kind '" + kind + "'");
    };
    auto need_increasing = [&](const std::vector<double>& grid, const std::string& field) {
        for (std::size_t i = 1; i < grid.size(); ++i)
            if (!(grid[i] > grid[i - 1]))
                throw ConfigError("field '" + field + "': must be strictly increasing");
    };

    if (kind == "volume-fraction") {
        need(t.has_value(), "t");
    } else if (kind == "mecke") {
        need(t.has_value(), "t");
        need(region_radius.has_value(), "region_radius");
    } else if (kind == "theta-curve") {
        need(!t_grid.empty(), "t_grid");
        need(n.has_value(), "n");
        need(target.has_value(), "target");
        need_increasing(t_grid, "t_grid");
    } else if (kind == "derivative") {
        need(t.has_value(), "t");
        need(dt.has_value(), "dt");
        need(n.has_value(), "n");
        need(target.has_value(), "target");
    } else if (kind == "threshold") {
        need(sizes.size() >= 3, "sizes");
        need(tol.has_value(), "tol");
        need_increasing(sizes, "sizes");
    } else if (kind == "rate-bound") {
        need(!t_grid.empty(), "t_grid");
        need(tc_hat.has_value(), "tc_hat");
        need(n.has_value(), "n");
        need(target.has_value(), "target");
        need(delta.has_value(), "delta");
        need_increasing(t_grid, "t_grid");
    } else if (kind == "slab") {
        need(t.has_value(), "t");
        need(!k_grid.empty(), "k_grid");
        need(length.has_value(), "length");
        need_increasing(k_grid, "k_grid");
        if (d < 3) throw ConfigError("field 'd': slab experiments need d >= 3");
    } else if (kind == "stab-radius") {
        need(t.has_value(), "t");
        need(box_half_width.has_value(), "box_half_width");
        need(target.has_value(), "target");
        if (n_levels < 2) throw ConfigError("field 'n_levels': need at least 2 levels");
    }
    if (target && target->dim() != d)
        throw ConfigError("field 'target': dimension does not match 'd'");
}

nlohmann::ordered_json ExperimentConfig::to_json() const {
    nlohmann::ordered_json j;
    j["kind"] = kind;
    j["d"] = d;
    j["master_seed"] = master_seed;
    j["out"] = out_dir;
    j["workers"] = workers;
    j["reps"] = reps;
    j["sigma"] = sigma;
    j["hard_cap"] = hard_cap;
    j["measure"] = nlohmann::ordered_json::array();
    for (const Atom& a : atoms)
        j["measure"].push_back({{"kind", "atom"}, {"r", a.radius}, {"w", a.weight}});
    for (const Segment& s : segments)
        j["measure"].push_back({{"kind", "segment"}, {"lo", s.lo}, {"hi", s.hi}, {"w", s.weight}});
    if (target) {
        nlohmann::ordered_json tj;
        switch (target->kind()) {
        case TargetSet::Kind::point:
            tj = {{"kind", "point"}, {"center", target->centers().front()}};
            break;
        case TargetSet::Kind::ball:
            tj = {{"kind", "ball"},
                  {"center", target->centers().front()},
                  {"rho", target->rhos().front()}};
            break;
        case TargetSet::Kind::box:
            tj = {{"kind", "box"}, {"lo", target->box_lo()}, {"hi", target->box_hi()}};
            break;
        case TargetSet::Kind::union_of_balls: {
            nlohmann::ordered_json balls = nlohmann::ordered_json::array();
            for (std::size_t i = 0; i < target->centers().size(); ++i)
                balls.push_back({{"center", target->centers()[i]}, {"rho", target->rhos()[i]}});
            tj = {{"kind", "union-of-balls"}, {"balls", balls}};
            break;
        }
        }
        j["target"] = tj;
    }
    auto put = [&](const char* key, const auto& opt) {
        if (opt) j[key] = *opt;
    };
    put("t", t);
    put("dt", dt);
    put("delta", delta);
    put("n", n);
    put("tol", tol);
    put("tc_hat", tc_hat);
    put("length", length);
    put("region_radius", region_radius);
    put("box_half_width", box_half_width);
    put("mecke_m", mecke_m);
    if (!t_grid.empty()) j["t_grid"] = t_grid;
    if (!sizes.empty()) j["sizes"] = sizes;
    if (!k_grid.empty()) j["k_grid"] = k_grid;
    j["mc_points"] = mc_points;
    j["n_levels"] = n_levels;
    j["drift_reps"] = drift_reps;
    return j;
}

std::string config_schema() {
    return R"(boolperc experiment config (flat key = value text, or JSON with the same keys)

required for every kind
  kind            one of: volume-fraction mecke theta-curve derivative
                          threshold rate-bound slab stab-radius
  d               dimension (integer >= 2; slab needs >= 3)
  measure         repeatable: 'atom R W' or 'segment LO HI W'
                  (JSON: list of {kind,r,w} / {kind,lo,hi,w})
  reps            replications per estimate (>= 2)

common, with defaults
  master_seed     unsigned 64-bit stream seed        (default 1)
  out             output directory                   (default out)
  workers         worker threads; never changes results (default 1)
  sigma           agreement threshold in combined stderr units (default 3)
  hard_cap        max expected points per sample     (default 1e8)
  drift_reps      replications for the n-vs-2n drift check (default max(200, reps/10))

target set (kinds theta-curve derivative rate-bound stab-radius)
  target          'point X..' | 'ball X.. RHO' | 'box LO.. HI..'
                  repeated 'ball' lines form a union of balls
                  (stab-radius defaults to the origin point)

per kind
  volume-fraction t
  mecke           t, region_radius (default 1.5b), mecke_m (optional count cap)
  theta-curve     t_grid, n, target
  derivative      t, n, target, dt (default t/40), mc_points (default 64)
  threshold       sizes (>= 3, increasing), tol (default 0.01)
  rate-bound      t_grid, tc_hat, n, target, delta (default b/50)
  slab            t, k_grid, length (default 12b)
  stab-radius     t, box_half_width (default 14b), n_levels (default 10)

b always denotes the support bound of the configured measure.
)";
}

} // namespace boolperc
