#include "hardyop/run.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace hardyop {

namespace {

std::string idx(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

double number_field(const Json& j, const std::string& where) {
    if (!j.is_number()) throw ConfigError(where, "expected a number");
    return j.get<double>();
}

std::size_t count_field(const Json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<long long>() <= 0) throw ConfigError(where, "expected a positive integer");
    return static_cast<std::size_t>(j.get<long long>());
}

void reject_unknown(const Json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) throw ConfigError(where.empty() ? key : where + "." + key, "unknown field");
    }
}

SweepRange parse_range(const Json& j, const std::string& where) {
    SweepRange r;
    if (j.is_array()) {
        if (j.empty()) throw ConfigError(where, "range must not be empty");
        // A bare [re, im] pair is ambiguous with a two-element real list; lists must hold numbers or pairs.
        for (std::size_t i = 0; i < j.size(); ++i) r.values.push_back(complex_from_json(j[i], idx(where, i)));
        return r;
    }
    if (j.is_object() && j.contains("linspace")) {
        const Json& l = j["linspace"];
        if (!l.is_object() || !l.contains("from") || !l.contains("to") || !l.contains("count"))
            throw ConfigError(where + ".linspace", "expected {from, to, count}");
        Complex from = complex_from_json(l["from"], where + ".linspace.from");
        Complex to = complex_from_json(l["to"], where + ".linspace.to");
        std::size_t n = count_field(l["count"], where + ".linspace.count");
        for (std::size_t i = 0; i < n; ++i) {
            double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
            r.values.push_back(from + (to - from) * t);
        }
        return r;
    }
    if (j.is_object() && j.contains("circle")) {
        const Json& c = j["circle"];
        if (!c.is_object() || !c.contains("radius") || !c.contains("count"))
            throw ConfigError(where + ".circle", "expected {radius, count[, phase]}");
        double radius = number_field(c["radius"], where + ".circle.radius");
        std::size_t n = count_field(c["count"], where + ".circle.count");
        double phase = c.contains("phase") ? number_field(c["phase"], where + ".circle.phase") : 0.0;
        for (std::size_t i = 0; i < n; ++i)
            r.values.push_back(std::polar(radius, phase + 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n)));
        return r;
    }
    throw ConfigError(where, "expected a list of values, {\"linspace\": ..} or {\"circle\": ..}");
}

struct SweepPoint {
    Complex nu, c;
    std::optional<std::pair<Complex, Complex>> kernel;  // (alpha, q)
};

std::vector<SweepPoint> sweep_points(const RunConfig& cfg) {
    const WeightedCompOp* base = cfg.operators.empty() ? nullptr : &cfg.operators.front().op;
    auto or_default = [](const std::optional<SweepRange>& r, Complex d) {
        return r ? r->values : std::vector<Complex>{d};
    };
    auto nus = or_default(cfg.sweep.nu, base ? base->phi().nu() : Complex(1.0));
    auto cs = or_default(cfg.sweep.c, base ? base->phi().c() : Complex(0.0));
    bool kernel = cfg.sweep.alpha || cfg.sweep.q;
    auto alphas = or_default(cfg.sweep.alpha, 1.0);
    auto qs = or_default(cfg.sweep.q, 0.0);
    std::vector<SweepPoint> out;
    for (Complex nu : nus)
        for (Complex c : cs) {
            if (!kernel) {
                out.push_back({nu, c, std::nullopt});
                continue;
            }
            for (Complex a : alphas)
                for (Complex q : qs) out.push_back({nu, c, std::make_pair(a, q)});
        }
    return out;
}

WeightedCompOp point_operator(const RunConfig& cfg, const SweepPoint& p) {
    AffineSymbol phi(p.nu, p.c);
    if (p.kernel) return WeightedCompOp::with_kernel_multiple(p.kernel->first, p.kernel->second, phi, cfg.space);
    if (!cfg.operators.empty()) {
        const auto& base = cfg.operators.front().op;
        if (base.form().tag != UpsilonTag::One) return WeightedCompOp::general(base.upsilon(), phi);
    }
    return WeightedCompOp::composition(phi);
}

template <class Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
    jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (jobs == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < jobs; ++t)
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) fn(i);
        });
    for (auto& th : workers) th.join();
}

ClassifyConfig classify_config(const RunConfig& cfg, std::uint64_t seed) {
    ClassifyConfig cc;
    cc.tolerances = cfg.tolerances;
    cc.dims = cfg.dims;
    cc.grid = cfg.grid;
    cc.seed = seed;
    cc.self_adjoint = cfg.check_self_adjoint;
    cc.co_isometry = cfg.check_co_isometry;
    return cc;
}

std::uint64_t operator_seed(std::uint64_t seed, std::size_t index) {
    // splitmix64 step keeps per-operator streams independent of scheduling
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

ClassificationReport safe_classify(const WeightedCompOp& op, const RunConfig& cfg, std::uint64_t seed) {
    try {
        return classify(op, cfg.space, classify_config(cfg, seed));
    } catch (const Error& e) {
        ClassificationReport r;
        r.op = op.describe();
        r.tolerances = cfg.tolerances;
        r.diagnostic = e.what();
        return r;
    }
}

Json kernel_props(const RunConfig& cfg) {
    Json j;
    auto ent = entireness_estimate(cfg.space, 64);
    Json samples = Json::array();
    for (const auto& s : ent.samples) samples.push_back(Json{{"n", s.n}, {"root", s.root}});
    j["entireness"] = Json{{"samples", samples}, {"verdict", to_string(ent.verdict)}};
    SeriesOptions opts;
    opts.tol = cfg.tolerances.eval_tol;
    try {
        auto pts = cfg.grid.points();
        double symmetry = 0.0, imag_diag = 0.0, min_diag = INFINITY;
        for (Complex p : pts) {
            Complex kpp = kernel_eval(p, p, cfg.space, opts).value;
            imag_diag = std::max(imag_diag, std::abs(kpp.imag()));
            min_diag = std::min(min_diag, kpp.real());
            for (Complex q : pts)
                symmetry = std::max(symmetry, std::abs(std::conj(kernel_eval(p, q, cfg.space, opts).value) -
                                                       kernel_eval(q, p, cfg.space, opts).value));
        }
        j["conjugate_symmetry_residual"] = symmetry;
        j["diagonal_max_imag"] = imag_diag;
        j["diagonal_min_real"] = min_diag;
        j["positive"] = imag_diag < opts.tol && min_diag > 0.0;
    } catch (const Error& e) {
        j["diagnostic"] = e.what();
    }
    return j;
}

struct Tally {
    std::size_t total = 0, agree = 0, disagree = 0, inconclusive = 0, paradox = 0, no_claim = 0, errors = 0;
    void add(const ClassificationReport& r) {
        if (!r.diagnostic.empty()) ++errors;
        for (const auto& v : r.verdicts) add(v);
    }
    void add(const PropertyVerdict& v) {
        ++total;
        switch (v.agreement) {
            case Agreement::Agree: ++agree; break;
            case Agreement::Disagree: ++disagree; break;
            case Agreement::Inconclusive: ++inconclusive; break;
            case Agreement::ParadoxCandidate: ++paradox; break;
            case Agreement::NoClaim: ++no_claim; break;
        }
    }
    int exit_status() const { return disagree + paradox > 0 ? 2 : 0; }
    Json to_json() const {
        return Json{{"verdicts", total},   {"agree", agree},       {"disagree", disagree},
                    {"inconclusive", inconclusive}, {"paradox_candidates", paradox}, {"no_claim", no_claim},
                    {"evaluation_errors", errors},  {"exit_status", exit_status()}};
    }
};

std::uint64_t effective_seed(const RunConfig& cfg, const RunOptions& opts) { return opts.seed.value_or(cfg.seed); }

Json header(const RunConfig& cfg, const RunOptions& opts) {
    Json j;
    j["space"] = Json{{"descriptor", cfg.space.descriptor()}};
    j["seed"] = effective_seed(cfg, opts);
    j["dims"] = cfg.dims;
    j["grid"] = cfg.grid.axis;
    j["tolerances"] = Json{{"tol_pass", cfg.tolerances.tol_pass},
                           {"tol_fail", cfg.tolerances.tol_fail},
                           {"eval_tol", cfg.tolerances.eval_tol}};
    return j;
}

std::filesystem::path output_file(const RunOptions& opts, const std::string& stem, const std::string& ext) {
    std::filesystem::path dir(opts.out_dir);
    std::filesystem::create_directories(dir);
    return dir / (stem + ext);
}

void write_file(const std::filesystem::path& path, const std::string& text, RunResult& result) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
    result.files.push_back(path.string());
}

struct OperatorOutcome {
    ClassificationReport report;
    std::vector<NormEstimate> growth;
    std::string growth_error;
};

std::vector<OperatorOutcome> evaluate_operators(const RunConfig& cfg, const RunOptions& opts) {
    std::vector<OperatorOutcome> out(cfg.operators.size());
    const std::uint64_t seed = effective_seed(cfg, opts);
    parallel_for(cfg.operators.size(), opts.jobs, [&](std::size_t i) {
        const auto& op = cfg.operators[i].op;
        out[i].report = safe_classify(op, cfg, operator_seed(seed, i));
        if (cfg.check_norm_growth) {
            try {
                out[i].growth = section_norm_growth(op, cfg.dims, cfg.space);
            } catch (const Error& e) {
                out[i].growth_error = e.what();
            }
        }
    });
    return out;
}

std::vector<PropertyVerdict> evaluate_pairs(const RunConfig& cfg, const RunOptions& opts) {
    std::vector<PropertyVerdict> out(cfg.pairs.size());
    if (!cfg.check_adjoint_pair) return {};
    auto cc = classify_config(cfg, effective_seed(cfg, opts));
    parallel_for(cfg.pairs.size(), opts.jobs, [&](std::size_t i) {
        auto [a, b] = cfg.pairs[i];
        try {
            out[i] = classify_adjoint_pair(cfg.operators[a].op, cfg.operators[b].op, cfg.space, cc);
        } catch (const Error& e) {
            out[i] = PropertyVerdict{Property::AdjointPair};
            out[i].partner = cfg.operators[b].name;
            out[i].numeric.method = e.what();
            out[i].agreement = Agreement::Inconclusive;
        }
    });
    return out;
}

}  // namespace

RunConfig parse_config(const Json& doc) {
    if (!doc.is_object()) throw ConfigError("<root>", "expected a JSON object");
    reject_unknown(doc, {"space", "operators", "pairs", "checks", "dims", "grid", "tolerances", "output", "sweep", "seed"},
                   "");
    RunConfig cfg;
    if (doc.contains("space")) {
        if (!doc["space"].is_string()) throw ConfigError("space", "expected a weight descriptor string");
        try {
            cfg.space = WeightSequence::parse(doc["space"].get<std::string>());
        } catch (const InvalidArgument& e) {
            throw ConfigError("space", e.what());
        }
    }

    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned()) throw ConfigError("seed", "expected an unsigned integer");
        cfg.seed = doc["seed"].get<std::uint64_t>();
    }

    if (doc.contains("operators")) {
        const Json& ops = doc["operators"];
        if (!ops.is_array()) throw ConfigError("operators", "expected an array");
        for (std::size_t i = 0; i < ops.size(); ++i) {
            std::string where = idx("operators", i);
            std::string name = "op" + std::to_string(i);
            if (ops[i].is_object() && ops[i].contains("name")) {
                if (!ops[i]["name"].is_string()) throw ConfigError(where + ".name", "expected a string");
                name = ops[i]["name"].get<std::string>();
            }
            cfg.operators.push_back({name, operator_from_json(ops[i], cfg.space, where)});
        }
    }

    if (!doc.contains("checks")) throw ConfigError("checks", "missing field");
    const Json& checks = doc["checks"];
    if (!checks.is_array()) throw ConfigError("checks", "expected an array");
    for (std::size_t i = 0; i < checks.size(); ++i) {
        std::string c = checks[i].is_string() ? checks[i].get<std::string>() : "";
        if (c == "self_adjoint") cfg.check_self_adjoint = true;
        else if (c == "co_isometry") cfg.check_co_isometry = true;
        else if (c == "adjoint_pair") cfg.check_adjoint_pair = true;
        else if (c == "norm_growth") cfg.check_norm_growth = true;
        else if (c == "kernel_props") cfg.check_kernel_props = true;
        else throw ConfigError(idx("checks", i), "unknown check");
    }

    if (doc.contains("pairs")) {
        const Json& pairs = doc["pairs"];
        if (!pairs.is_array()) throw ConfigError("pairs", "expected an array");
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const Json& p = pairs[i];
            if (!p.is_array() || p.size() != 2 || !p[0].is_number_unsigned() || !p[1].is_number_unsigned())
                throw ConfigError(idx("pairs", i), "expected [first, second] operator indices");
            std::size_t a = p[0].get<std::size_t>(), b = p[1].get<std::size_t>();
            if (a >= cfg.operators.size() || b >= cfg.operators.size())
                throw ConfigError(idx("pairs", i), "operator index out of range");
            cfg.pairs.emplace_back(a, b);
        }
    }
    if (cfg.check_adjoint_pair && cfg.pairs.empty() && !doc.contains("sweep"))
        throw ConfigError("pairs", "adjoint_pair check needs at least one pair");

    if (!doc.contains("dims")) throw ConfigError("dims", "missing field");
    const Json& dims = doc["dims"];
    if (!dims.is_array() || dims.empty()) throw ConfigError("dims", "expected a nonempty array");
    for (std::size_t i = 0; i < dims.size(); ++i) {
        std::size_t d = count_field(dims[i], idx("dims", i));
        if (!cfg.dims.empty() && d <= cfg.dims.back()) throw ConfigError(idx("dims", i), "dims must be increasing");
        cfg.dims.push_back(d);
    }

    if (doc.contains("grid")) {
        const Json& g = doc["grid"];
        if (!g.is_object()) throw ConfigError("grid", "expected {\"axis\": [..]}");
        reject_unknown(g, {"axis"}, "grid");
        if (!g.contains("axis") || !g["axis"].is_array() || g["axis"].empty())
            throw ConfigError("grid.axis", "expected a nonempty array of numbers");
        cfg.grid.axis.clear();
        for (std::size_t i = 0; i < g["axis"].size(); ++i)
            cfg.grid.axis.push_back(number_field(g["axis"][i], idx("grid.axis", i)));
    }

    if (doc.contains("tolerances")) {
        const Json& t = doc["tolerances"];
        if (!t.is_object()) throw ConfigError("tolerances", "expected an object");
        reject_unknown(t, {"tol_pass", "tol_fail", "eval_tol"}, "tolerances");
        if (t.contains("tol_pass")) cfg.tolerances.tol_pass = number_field(t["tol_pass"], "tolerances.tol_pass");
        if (t.contains("tol_fail")) cfg.tolerances.tol_fail = number_field(t["tol_fail"], "tolerances.tol_fail");
        if (t.contains("eval_tol")) cfg.tolerances.eval_tol = number_field(t["eval_tol"], "tolerances.eval_tol");
    }
    const auto& tol = cfg.tolerances;
    if (!(tol.tol_pass > 0) || !(tol.tol_pass < tol.tol_fail))
        throw ConfigError("tolerances", "require 0 < tol_pass < tol_fail");
    if (!(tol.eval_tol > 0) || tol.eval_tol > tol.tol_pass / 100.0)
        throw ConfigError("tolerances.eval_tol", "require 0 < eval_tol <= tol_pass/100");

    if (doc.contains("output")) {
        const Json& o = doc["output"];
        if (!o.is_object()) throw ConfigError("output", "expected an object");
        reject_unknown(o, {"path", "format"}, "output");
        if (o.contains("path")) {
            if (!o["path"].is_string() || o["path"].get<std::string>().empty())
                throw ConfigError("output.path", "expected a nonempty string");
            cfg.output_path = o["path"].get<std::string>();
        }
        if (o.contains("format")) {
            std::string f = o["format"].is_string() ? o["format"].get<std::string>() : "";
            if (f != "json" && f != "csv") throw ConfigError("output.format", "expected \"json\" or \"csv\"");
            cfg.output_format = f;
        }
    }

    if (doc.contains("sweep")) {
        const Json& s = doc["sweep"];
        if (!s.is_object()) throw ConfigError("sweep", "expected an object");
        reject_unknown(s, {"nu", "c", "alpha", "q"}, "sweep");
        if (s.contains("nu")) cfg.sweep.nu = parse_range(s["nu"], "sweep.nu");
        if (s.contains("c")) cfg.sweep.c = parse_range(s["c"], "sweep.c");
        if (s.contains("alpha")) cfg.sweep.alpha = parse_range(s["alpha"], "sweep.alpha");
        if (s.contains("q")) cfg.sweep.q = parse_range(s["q"], "sweep.q");
        if (cfg.sweep.nu)
            for (std::size_t i = 0; i < cfg.sweep.nu->values.size(); ++i)
                if (std::abs(cfg.sweep.nu->values[i]) > 1.0 + 1e-14)
                    throw ConfigError(idx("sweep.nu", i), "requires |nu| <= 1");
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path, "cannot open config file");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(parse_document(buf.str(), path));
}

Json run_report(const RunConfig& cfg, const RunOptions& opts) {
    auto outcomes = evaluate_operators(cfg, opts);
    auto pairs = evaluate_pairs(cfg, opts);
    Json report = header(cfg, opts);
    if (cfg.check_kernel_props) report["space"]["kernel_props"] = kernel_props(cfg);
    Tally tally;
    Json ops = Json::array();
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        Json j;
        j["name"] = cfg.operators[i].name;
        j["operator"] = operator_to_json(cfg.operators[i].op);
        j["report"] = report_to_json(outcomes[i].report);
        if (cfg.check_norm_growth) {
            Json g = Json::array();
            for (const auto& e : outcomes[i].growth)
                g.push_back(Json{{"N", e.dim}, {"norm", e.norm}, {"low_confidence", e.low_confidence}});
            j["norm_growth"] = g;
            if (!outcomes[i].growth_error.empty()) j["norm_growth_error"] = outcomes[i].growth_error;
        }
        tally.add(outcomes[i].report);
        ops.push_back(j);
    }
    report["operators"] = ops;
    if (cfg.check_adjoint_pair) {
        Json jp = Json::array();
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            jp.push_back(Json{{"first", cfg.operators[cfg.pairs[i].first].name},
                              {"second", cfg.operators[cfg.pairs[i].second].name},
                              {"verdict", verdict_to_json(pairs[i])}});
            tally.add(pairs[i]);
        }
        report["adjoint_pairs"] = jp;
    }
    report["summary"] = tally.to_json();
    return report;
}

RunResult run(const RunConfig& cfg, const RunOptions& opts) {
    if (cfg.operators.empty()) throw ConfigError("operators", "run needs at least one operator");
    Json report = run_report(cfg, opts);
    RunResult result;
    result.exit_status = report["summary"]["exit_status"].get<int>();

    if (cfg.output_format == "json") {
        write_file(output_file(opts, cfg.output_path, ".json"), dump(report), result);
    } else {
        std::ostringstream csv;
        csv << "operator,property,partner,symbolic,residual,agreement,agree\n";
        auto row = [&](const std::string& name, const Json& v) {
            csv << name << "," << v["property"].get<std::string>() << ","
                << (v.contains("partner") ? "\"" + v["partner"].get<std::string>() + "\"" : "") << ","
                << v["symbolic"]["truth"].get<std::string>() << ","
                << format_double(v["numeric"]["residual"].get<double>()) << ","
                << v["agreement"].get<std::string>() << "," << (v["agree"].get<bool>() ? "true" : "false") << "\n";
        };
        for (const auto& op : report["operators"])
            for (const auto& v : op["report"]["verdicts"]) row(op["name"].get<std::string>(), v);
        if (report.contains("adjoint_pairs"))
            for (const auto& p : report["adjoint_pairs"]) row(p["first"].get<std::string>(), p["verdict"]);
        write_file(output_file(opts, cfg.output_path, ".csv"), csv.str(), result);
    }

    if (cfg.dims.size() > 1) {
        std::ostringstream csv;
        csv << "operator,property,N,residual\n";
        auto curve_rows = [&](const std::string& name, const Json& v) {
            if (!v["numeric"].contains("curve")) return;
            for (const auto& pt : v["numeric"]["curve"])
                csv << name << "," << v["property"].get<std::string>() << "," << pt["N"].get<std::size_t>() << ","
                    << format_double(pt["residual"].get<double>()) << "\n";
        };
        for (const auto& op : report["operators"])
            for (const auto& v : op["report"]["verdicts"]) curve_rows(op["name"].get<std::string>(), v);
        if (report.contains("adjoint_pairs"))
            for (const auto& p : report["adjoint_pairs"]) curve_rows(p["first"].get<std::string>(), p["verdict"]);
        write_file(output_file(opts, cfg.output_path + "_residuals", ".csv"), csv.str(), result);
    }
    return result;
}

RunResult sweep(const RunConfig& cfg, const RunOptions& opts) {
    if (cfg.sweep.empty()) throw ConfigError("sweep", "sweep needs at least one of nu, c, alpha, q");
    auto points = sweep_points(cfg);
    std::vector<ClassificationReport> reports(points.size());
    const std::uint64_t seed = effective_seed(cfg, opts);
    parallel_for(points.size(), opts.jobs, [&](std::size_t i) {
        try {
            reports[i] = safe_classify(point_operator(cfg, points[i]), cfg, operator_seed(seed, i));
        } catch (const Error& e) {
            reports[i].diagnostic = e.what();
            reports[i].tolerances = cfg.tolerances;
        }
    });

    Tally tally;
    for (const auto& r : reports) tally.add(r);
    RunResult result;
    result.exit_status = tally.exit_status();

    std::ostringstream csv;
    csv << "index,nu_re,nu_im,c_re,c_im,alpha_re,alpha_im,q_re,q_im";
    std::vector<Property> props;
    for (const auto& r : reports) {
        if (!r.verdicts.empty()) {
            for (const auto& v : r.verdicts) props.push_back(v.property);
            break;
        }
    }
    for (Property p : props) csv << "," << to_string(p) << "_symbolic," << to_string(p) << "_residual," << to_string(p) << "_agree";
    csv << "\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& pt = points[i];
        csv << i << "," << format_double(pt.nu.real()) << "," << format_double(pt.nu.imag()) << ","
            << format_double(pt.c.real()) << "," << format_double(pt.c.imag()) << ",";
        if (pt.kernel)
            csv << format_double(pt.kernel->first.real()) << "," << format_double(pt.kernel->first.imag()) << ","
                << format_double(pt.kernel->second.real()) << "," << format_double(pt.kernel->second.imag());
        else
            csv << ",,,";
        for (Property p : props) {
            const PropertyVerdict* v = reports[i].find(p);
            if (v)
                csv << "," << to_string(v->symbolic.truth) << "," << format_double(v->numeric.residual) << ","
                    << (v->agree() ? "true" : "false");
            else
                csv << ",,,";
        }
        csv << "\n";
    }
    write_file(output_file(opts, cfg.output_path, ".csv"), csv.str(), result);

    if (cfg.output_format == "json") {
        Json report = header(cfg, opts);
        Json rows = Json::array();
        for (std::size_t i = 0; i < points.size(); ++i) {
            Json row;
            row["index"] = i;
            row["nu"] = complex_to_json(points[i].nu);
            row["c"] = complex_to_json(points[i].c);
            if (points[i].kernel) {
                row["alpha"] = complex_to_json(points[i].kernel->first);
                row["q"] = complex_to_json(points[i].kernel->second);
            }
            row["report"] = report_to_json(reports[i]);
            rows.push_back(row);
        }
        report["points"] = rows;
        report["summary"] = tally.to_json();
        write_file(output_file(opts, cfg.output_path, ".json"), dump(report), result);
    }
    return result;
}

}  // namespace hardyop
