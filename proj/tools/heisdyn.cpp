#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "heis/entropy.hpp"
#include "heis/example48.hpp"
#include "heis/expansive.hpp"
#include "heis/homoclinic.hpp"
#include "heis/lyapunov.hpp"
#include "heis/parse.hpp"
#include "heis/report.hpp"
#include "heis/twisted.hpp"
#include "heis/word_norm.hpp"
#include "heis/words.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

using namespace heis;

namespace {

struct Ctx {
    RunConfig cfg;
    std::string csv_path;
    int exit_code = 0;
};

void emit(Ctx& ctx, const std::string& command, Json result) {
    std::cout << make_report(command, ctx.cfg, std::move(result)).dump(2) << "\n";
}

void maybe_csv(Ctx& ctx, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    if (!ctx.csv_path.empty()) write_csv(ctx.csv_path, header, rows);
}

Json poly1_json(const LaurentPoly1& p, const std::string& var) {
    Json j;
    j["text"] = to_string(p, var);
    j["low_exp"] = p.low_exp();
    std::vector<std::string> cs;
    for (auto& c : p.coeffs()) cs.push_back(to_string(c));
    j["coefficients"] = cs;
    return j;
}

Json estimate_json(const entropy::EntropyEstimate& est) {
    Json j;
    j["value"] = est.value;
    j["error_bound"] = est.error_bound;
    j["error_is_heuristic"] = est.error_is_heuristic;
    switch (est.method) {
        case entropy::EntropyEstimate::Method::TraceSeries: j["method"] = "trace-series"; break;
        case entropy::EntropyEstimate::Method::PeriodicDet: j["method"] = "periodic-determinant"; break;
        case entropy::EntropyEstimate::Method::LinearFormula: j["method"] = "linear-formula"; break;
        case entropy::EntropyEstimate::Method::Lyapunov: j["method"] = "lyapunov"; break;
        case entropy::EntropyEstimate::Method::ClosedForm: j["method"] = "closed-form"; break;
    }
    j["diagnostics"] = est.diagnostics;
    return j;
}

Json verdict_json(const expansive::ExpansivenessVerdict& v) {
    Json j;
    switch (v.status) {
        case expansive::ExpansivenessVerdict::Status::Expansive: j["status"] = "expansive"; break;
        case expansive::ExpansivenessVerdict::Status::Nonexpansive:
            j["status"] = "nonexpansive";
            break;
        case expansive::ExpansivenessVerdict::Status::Undetermined:
            j["status"] = "undetermined";
            break;
    }
    if (v.witness) {
        j["witness"] = {{"xi_re", v.witness->xi.real()},
                        {"xi_im", v.witness->xi.imag()},
                        {"zeta_re", v.witness->zeta.real()},
                        {"zeta_im", v.witness->zeta.imag()},
                        {"kind", v.witness->kind}};
    }
    j["diagnostics"] = v.diagnostics;
    return j;
}

numeric::QuadratureGrid grid_of(const Ctx& ctx, int dims = 2) {
    numeric::QuadratureGrid g;
    g.n = ctx.cfg.grid_n;
    g.dims = dims;
    return g;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact and numerical dynamics of principal Heisenberg actions"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print help");  // frees -h/--h for polynomial options
    Ctx ctx;
    if (const char* env = std::getenv("HEISDYN_CACHE")) ctx.cfg.cache_path = env;

    app.add_option("--csv", ctx.csv_path, "write a CSV sidecar to this path");
    app.add_option("--grid", ctx.cfg.grid_n, "quadrature points per circle");
    app.add_option("--tol", ctx.cfg.tol, "tolerance for certified series");
    app.add_option("--seed", ctx.cfg.seed, "master seed");
    app.add_option("--steps", ctx.cfg.steps, "cocycle steps per sample");
    app.add_option("--samples", ctx.cfg.samples, "xi samples per zeta");
    app.add_option("--threads", ctx.cfg.threads, "worker threads (0 = default)");
    app.add_option("--cache", ctx.cfg.cache_path, "word-count cache path");

    std::string expr, expr2, h_text = "1", g_text, g0t, g1t, g2t, u_text;
    int64_t n_arg = 1, p_arg = 0, q_arg = 1, nmax = 30, window = 64, trials = 20;
    int64_t zeta_grid = 16;
    double zeta_theta = 0.0, xi_theta = 0.0, eps = 1e-3;
    std::vector<int64_t> q_list;

    auto* ring = app.add_subcommand("ring", "group-ring arithmetic");
    ring->require_subcommand(1);
    auto* ring_mul = ring->add_subcommand("mul", "product of two elements");
    ring_mul->add_option("f", expr)->required();
    ring_mul->add_option("g", expr2)->required();
    auto* ring_star = ring->add_subcommand("star", "the involution f*");
    ring_star->add_option("f", expr)->required();
    auto* ring_newton = ring->add_subcommand("newton", "Newton polygon vertices");
    ring_newton->add_option("f", expr)->required();
    auto* ring_content = ring->add_subcommand("content", "content polynomial in z");
    ring_content->add_option("f", expr)->required();
    auto* ring_qbinom = ring->add_subcommand("qbinom", "coefficients of (x+y)^n");
    ring_qbinom->add_option("n", n_arg)->required();

    auto* mixing = app.add_subcommand("mixing", "mixing criteria");
    mixing->require_subcommand(1);
    auto* mix_central = mixing->add_subcommand("central", "central polynomial criterion");
    mix_central->add_option("g", expr)->required();
    auto* mix_hayes = mixing->add_subcommand("hayes", "sufficient conditions");
    mix_hayes->add_option("f", expr)->required();
    mix_hayes->add_option("--kmax", nmax, "cyclotomic order bound");

    auto* exp_cmd = app.add_subcommand("expansive", "expansiveness analysis");
    exp_cmd->require_subcommand(1);
    auto* exp_sturm = exp_cmd->add_subcommand("sturm", "exact decision for one variable");
    exp_sturm->add_option("p", expr)->required();
    auto* exp_linear = exp_cmd->add_subcommand("linear", "criterion for f = h(x,z) y - g(x,z)");
    exp_linear->add_option("--h", h_text);
    exp_linear->add_option("--g", g_text)->required();
    auto* exp_allan =
        exp_cmd->add_subcommand("allan", "twisted-matrix probe at zeta = e^{2pi i p/q}");
    exp_allan->add_option("f", expr)->required();
    exp_allan->add_option("-p", p_arg)->required();
    exp_allan->add_option("-q", q_arg)->required();
    auto* exp_scan = exp_cmd->add_subcommand("scan", "bounded cocycle scan");
    exp_scan->add_option("--g", g_text)->required();
    exp_scan->add_option("--h", h_text);
    exp_scan->add_option("--zeta-theta", zeta_theta, "zeta angle as a fraction of a turn");
    exp_scan->add_option("--xi-theta", xi_theta);
    exp_scan->add_option("-N", window);
    auto* exp_lop = exp_cmd->add_subcommand("lopsidize", "search g with f g lopsided");
    exp_lop->add_option("f", expr)->required();
    auto* exp_48 = exp_cmd->add_subcommand("example48", "the degree-48 worked analysis");

    auto* ent = app.add_subcommand("entropy", "entropy engines");
    ent->require_subcommand(1);
    auto* ent_trace = ent->add_subcommand("trace", "lopsided trace series");
    ent_trace->add_option("f", expr)->required();
    auto* ent_per = ent->add_subcommand("periodic", "periodic-point determinants");
    ent_per->add_option("f", expr)->required();
    ent_per->add_option("--q", q_list, "prime sizes")->delimiter(',');
    auto* ent_lin = ent->add_subcommand("linear", "formula for f = g(y,z) + x h(y,z)");
    ent_lin->add_option("--g", g_text)->required();
    ent_lin->add_option("--h", h_text);
    auto* ent_face = ent->add_subcommand("face", "Newton-polygon face lower bounds");
    ent_face->add_option("f", expr)->required();
    auto* ent_lyap = ent->add_subcommand("lyapunov", "Lyapunov-exponent integral");
    ent_lyap->add_option("f", expr)->required();
    ent_lyap->add_option("--zeta-grid", zeta_grid);
    auto* ent_quad = ent->add_subcommand("experiment-quadratic",
                                         "conjectural quadratic formula vs periodic (experiment)");
    ent_quad->add_option("--g0", g0t)->required();
    ent_quad->add_option("--g1", g1t)->required();
    ent_quad->add_option("--g2", g2t)->required();

    auto* words = app.add_subcommand("words", "identity word counts");
    words->require_subcommand(1);
    auto* words_heis = words->add_subcommand("heis", "Heisenberg counts");
    auto* words_z2 = words->add_subcommand("z2", "commutative counts");
    auto* words_free = words->add_subcommand("free", "free-group counts");
    for (auto* w : {words_heis, words_z2, words_free}) w->add_option("--nmax", nmax);

    auto* hom = app.add_subcommand("homoclinic", "fundamental homoclinic data");
    hom->require_subcommand(1);
    auto* hom_fund = hom->add_subcommand("fundamental", "window of (f*)^{-1} mod 1");
    hom_fund->add_option("f", expr)->required();
    hom_fund->add_option("--eps", eps);
    auto* hom_cover = hom->add_subcommand("cover", "symbolic cover image of a configuration");
    hom_cover->add_option("f", expr)->required();
    hom_cover->add_option("--u", u_text)->required();
    hom_cover->add_option("--eps", eps);

    auto* rprod = app.add_subcommand("randprod", "random matrix product experiment");
    rprod->add_option("--n", ctx.cfg.steps);
    rprod->add_option("--trials", trials);

    for (auto* sub : app.get_subcommands({})) {
        sub->set_help_flag("--help", "print help");
        sub->fallthrough();
        for (auto* s2 : sub->get_subcommands({})) {
            s2->set_help_flag("--help", "print help");
            s2->fallthrough();
        }
    }

    CLI11_PARSE(app, argc, argv);

#if defined(_OPENMP)
    if (ctx.cfg.threads > 0) omp_set_num_threads(ctx.cfg.threads);
#endif

    try {
        if (*ring_mul) {
            auto f = parse_group_ring(expr), g = parse_group_ring(expr2);
            emit(ctx, "ring mul", Json{{"product", to_string(mul(f, g))}});
        } else if (*ring_star) {
            emit(ctx, "ring star", Json{{"star", to_string(star(parse_group_ring(expr)))}});
        } else if (*ring_newton) {
            auto np = newton_polygon(parse_group_ring(expr));
            std::vector<std::vector<int64_t>> vs;
            for (auto& v : np.vertices) vs.push_back({v.first, v.second});
            emit(ctx, "ring newton", Json{{"vertices", vs}});
        } else if (*ring_content) {
            emit(ctx, "ring content",
                 Json{{"content", poly1_json(content(parse_group_ring(expr)), "z")}});
        } else if (*ring_qbinom) {
            auto qs = q_binomial_expand(n_arg);
            Json arr = Json::array();
            for (auto& p : qs) arr.push_back(poly1_json(p, "z"));
            emit(ctx, "ring qbinom", Json{{"n", n_arg}, {"coefficients", arr}});
        } else if (*mix_central) {
            auto f = parse_group_ring(expr);
            auto zc = z_coefficients(f);
            if (zc.size() != 1 || zc.begin()->first != std::make_pair(int64_t(0), int64_t(0)))
                throw std::invalid_argument("mixing central: element must lie in Z[z^+-]");
            auto hit = root_of_unity_root(zc.begin()->second);
            Json j{{"mixing", !hit.has_value()}};
            if (hit) j["cyclotomic_order"] = *hit;
            emit(ctx, "mixing central", j);
        } else if (*mix_hayes) {
            auto f = parse_group_ring(expr);
            Json j;
            bool no_y = true, no_x = true;
            for (auto& [m, cf] : f.terms()) {
                if (m.l != 0) no_y = false;
                if (m.k != 0) no_x = false;
            }
            if (!f.is_zero() && (no_y || no_x)) {
                // conditions (1)/(2): f in a commutative two-variable subring
                LaurentPoly2 two;
                for (auto& [m, cf] : f.terms()) two.add_term(no_y ? m.k : m.l, m.m, cf);
                auto hit = generalized_cyclotomic_divisor(two, nmax, 6);
                j["subring"] = no_y ? "x,z" : "y,z";
                j["subring_divisor"] =
                    hit ? Json{{"k", hit->k}, {"n1", hit->n1}, {"n2", hit->n2}} : Json(nullptr);
                j["mixing_sufficient"] = !hit.has_value();
                j["note"] = "two-variable subring: mixing follows if no generalized cyclotomic "
                            "divisor exists (search bounded)";
                emit(ctx, "mixing hayes", j);
                return ctx.exit_code;
            }
            LaurentPoly1 c = content(f);
            std::optional<int64_t> c_hit;
            if (!c.is_zero()) c_hit = root_of_unity_root(c);
            j["content"] = to_string(c, "z");
            j["content_cyclotomic_order"] = c_hit ? Json(*c_hit) : Json(nullptr);
            auto ab = abelianize(f);
            std::optional<GenCycloHit> ab_hit;
            if (!ab.is_zero()) ab_hit = generalized_cyclotomic_divisor(ab, nmax, 6);
            j["abelianization_divisor"] =
                ab_hit ? Json{{"k", ab_hit->k}, {"n1", ab_hit->n1}, {"n2", ab_hit->n2}}
                       : Json(nullptr);
            bool sufficient = !c_hit && !ab_hit && !ab.is_zero() && !c.is_zero();
            j["mixing_sufficient"] = sufficient;
            j["note"] = "content free of cyclotomic factors and abelianization free of "
                        "generalized cyclotomic divisors within the search bounds";
            emit(ctx, "mixing hayes", j);
        } else if (*exp_sturm) {
            bool e = sturm_expansive(parse_laurent1(expr, "u"));
            emit(ctx, "expansive sturm", Json{{"expansive", e}});
        } else if (*exp_linear) {
            auto h = parse_laurent2_vars(h_text, {"x", "z"});
            auto g = parse_laurent2_vars(g_text, {"x", "z"});
            expansive::LinearCheckOptions opts;
            opts.zeta_grid = ctx.cfg.grid_n;
            auto v = expansive::check_linear_y_expansive(h, g, opts);
            if (v.status == expansive::ExpansivenessVerdict::Status::Undetermined)
                ctx.exit_code = 2;
            if (!ctx.csv_path.empty()) {
                std::vector<std::vector<double>> rows;
                for (int64_t i = 0; i < ctx.cfg.grid_n; ++i) {
                    auto zeta = numeric::unit(double(i) / double(ctx.cfg.grid_n));
                    double mg = numeric::mahler1(slice(g, zeta).coeffs).log_value;
                    double mh = numeric::mahler1(slice(h, zeta).coeffs).log_value;
                    rows.push_back({double(i) / double(ctx.cfg.grid_n), mg, mh, mg - mh});
                }
                maybe_csv(ctx, {"zeta_theta", "m_g", "m_h", "D"}, rows);
            }
            emit(ctx, "expansive linear", verdict_json(v));
        } else if (*exp_allan) {
            auto rep = expansive::allan_rational_check(parse_group_ring(expr), p_arg, q_arg,
                                                       ctx.cfg.grid_n);
            Json j{{"min_abs_det", rep.min_abs_det},
                   {"q", rep.q},
                   {"argmin_xi_re", rep.argmin_xi.real()},
                   {"argmin_xi_im", rep.argmin_xi.imag()},
                   {"argmin_eta_re", rep.argmin_eta.real()},
                   {"argmin_eta_im", rep.argmin_eta.imag()},
                   {"diagnostics", rep.diagnostics}};
            emit(ctx, "expansive allan", j);
        } else if (*exp_scan) {
            auto g = parse_laurent2_vars(g_text, {"x", "z"});
            auto h = parse_laurent2_vars(h_text, {"x", "z"});
            auto tr = expansive::bounded_cocycle_scan(g, h, numeric::unit(zeta_theta),
                                                      numeric::unit(xi_theta), window);
            Json j{{"sup_above", tr.sup_above}, {"window", tr.window}, {"values", tr.values}};
            std::vector<std::vector<double>> rows;
            for (int64_t n = -tr.window; n <= tr.window; ++n)
                rows.push_back({double(n), tr.psi(n)});
            maybe_csv(ctx, {"n", "psi"}, rows);
            emit(ctx, "expansive scan", j);
        } else if (*exp_lop) {
            auto f = parse_group_ring(expr);
            auto g = expansive::lopsidize(f);
            Json j;
            j["found"] = g.has_value();
            if (g) {
                j["g"] = to_string(*g);
                j["fg"] = to_string(mul(f, *g));
            } else {
                ctx.exit_code = 2;
            }
            emit(ctx, "expansive lopsidize", j);
        } else if (*exp_48) {
            auto ex = expansive::example48_suite();
            maybe_csv(ctx, {"s", "log_c_tau"}, expansive::example48_graph_csv(4096));
            emit(ctx, "expansive example48", ex.to_json());
        } else if (*ent_trace) {
            auto est = entropy::trace_series(parse_group_ring(expr), ctx.cfg.tol);
            emit(ctx, "entropy trace", estimate_json(est));
        } else if (*ent_per) {
            if (q_list.empty())
                q_list = ctx.cfg.q_list;
            else
                ctx.cfg.q_list = q_list;
            auto res = entropy::periodic_determinant(parse_group_ring(expr), q_list, grid_of(ctx));
            Json j = estimate_json(res.estimate);
            j["per_q"] = res.value;
            j["q"] = res.q;
            std::vector<std::vector<double>> rows;
            for (size_t i = 0; i < res.q.size(); ++i)
                rows.push_back({double(res.q[i]), res.value[i]});
            maybe_csv(ctx, {"q", "value"}, rows);
            emit(ctx, "entropy periodic", j);
        } else if (*ent_lin) {
            auto g = parse_laurent2_vars(g_text, {"y", "z"});
            auto h = parse_laurent2_vars(h_text, {"y", "z"});
            std::vector<std::vector<double>> rows;
            auto est = entropy::linear_formula(g, h, ctx.cfg.grid_n, &rows);
            maybe_csv(ctx, {"zeta_theta", "m_g", "m_h", "max"}, rows);
            emit(ctx, "entropy linear", estimate_json(est));
        } else if (*ent_face) {
            auto fb = entropy::face_entropy_lower_bound(parse_group_ring(expr), grid_of(ctx));
            Json faces = Json::array();
            for (auto& f : fb.faces) faces.push_back({{"face", f.face}, {"bound", f.value}});
            emit(ctx, "entropy face", Json{{"faces", faces}, {"best", fb.best}});
        } else if (*ent_lyap) {
            std::vector<std::vector<double>> surface;
            auto est = lyap::entropy_via_lyapunov(parse_group_ring(expr), zeta_grid,
                                                  ctx.cfg.steps, ctx.cfg.samples, ctx.cfg.seed,
                                                  ctx.csv_path.empty() ? nullptr : &surface);
            maybe_csv(ctx, {"xi_theta", "zeta_theta", "local_growth"}, surface);
            emit(ctx, "entropy lyapunov", estimate_json(est));
        } else if (*ent_quad) {
            auto g0 = parse_laurent2_vars(g0t, {"y", "z"});
            auto g1 = parse_laurent2_vars(g1t, {"y", "z"});
            auto g2 = parse_laurent2_vars(g2t, {"y", "z"});
            auto ex =
                entropy::quadratic_entropy_experiment(g0, g1, g2, ctx.cfg.q_list, grid_of(ctx));
            emit(ctx, "entropy experiment-quadratic",
                 Json{{"conjectural", true},
                      {"simple_det_condition", ex.simple_det_condition},
                      {"conjectured", ex.conjectured},
                      {"periodic", ex.periodic}});
        } else if (*words_heis || *words_z2 || *words_free) {
            using entropy::WordCountTable;
            WordCountTable::Group grp = *words_heis ? WordCountTable::Group::Heisenberg
                                        : *words_z2 ? WordCountTable::Group::Z2
                                                    : WordCountTable::Group::Free2;
            WordCountTable table;
            bool from_cache = false;
            if (!ctx.cfg.cache_path.empty()) {
                std::ifstream in(ctx.cfg.cache_path);
                if (in) {
                    std::string text((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
                    WordCountTable cached;
                    if (entropy::cache_from_json(text, cached) && cached.group == grp &&
                        cached.n_max >= nmax) {
                        table = std::move(cached);
                        from_cache = true;
                    }
                }
            }
            if (!from_cache) {
                table = grp == WordCountTable::Group::Heisenberg
                            ? entropy::word_count_heisenberg(nmax)
                        : grp == WordCountTable::Group::Z2 ? entropy::word_count_z2(nmax)
                                                           : entropy::word_count_free2(nmax);
                if (!ctx.cfg.cache_path.empty()) {
                    std::ofstream out(ctx.cfg.cache_path);
                    out << entropy::cache_to_json(table);
                }
            }
            std::vector<std::string> counts;
            for (int64_t n = 0; n <= nmax; ++n) counts.push_back(to_string(table.at(n)));
            emit(ctx, "words " + entropy::group_name(grp),
                 Json{{"n_max", nmax}, {"counts", counts}, {"from_cache", from_cache}});
        } else if (*hom_fund) {
            auto f = parse_group_ring(expr);
            auto w = homoclinic::fundamental_homoclinic(f, eps);
            auto cert = homoclinic::decay_certificate(w, f);
            Json vals = Json::object();
            std::vector<std::vector<double>> rows;
            for (auto& [m, v] : w.values) {
                vals[to_string(m)] = v;
                rows.push_back({double(m.k), double(m.l), double(m.m), v,
                                cert.C * std::pow(cert.r, double(word_norm(m)))});
            }
            maybe_csv(ctx, {"k", "l", "m", "value", "decay_bound"}, rows);
            emit(ctx, "homoclinic fundamental",
                 Json{{"values", vals},
                      {"tail_bound", w.tail_bound},
                      {"decay_C", cert.C},
                      {"decay_r", cert.r},
                      {"max_violation", cert.max_violation}});
        } else if (*hom_cover) {
            auto f = parse_group_ring(expr);
            auto w = homoclinic::fundamental_homoclinic(f, eps);
            auto img = homoclinic::symbolic_cover_sample(parse_group_ring(u_text), w);
            Json vals = Json::object();
            for (auto& [m, v] : img) vals[to_string(m)] = v;
            emit(ctx, "homoclinic cover", Json{{"values", vals}, {"tail_bound", w.tail_bound}});
        } else if (*rprod) {
            auto rep = lyap::random_product_experiment(ctx.cfg.steps, trials, ctx.cfg.seed);
            std::vector<std::vector<double>> rows;
            for (size_t i = 0; i < rep.per_trial.size(); ++i)
                rows.push_back({double(i), rep.per_trial[i]});
            maybe_csv(ctx, {"trial", "value"}, rows);
            emit(ctx, "randprod",
                 Json{{"n", rep.n},
                      {"trials", rep.trials},
                      {"per_trial", rep.per_trial},
                      {"mean", rep.mean},
                      {"mean_abs", rep.mean_abs},
                      {"stddev", rep.stddev}});
        }
    } catch (const std::exception& e) {
        Json err{{"schema", "heisdyn-report/1"}, {"error", e.what()}};
        std::cout << err.dump(2) << "\n";
        return 1;
    }
    return ctx.exit_code;
}
