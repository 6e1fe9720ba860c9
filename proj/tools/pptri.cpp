#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pptri/charsum.hpp"
#include "pptri/conjecture.hpp"
#include "pptri/cubic.hpp"
#include "pptri/curvelab.hpp"
#include "pptri/lintri.hpp"
#include "pptri/report.hpp"

namespace {

using namespace pptri;

struct GlobalOpts {
    std::string format = "json";
    std::string output;
    int threads = 0;
    std::uint64_t seed = 1;
    std::uint64_t budget = (1ull << 20);
    bool timings = false;
};

void emit(const GlobalOpts& g, const std::string& text) {
    if (g.output.empty()) {
        std::cout << text << std::endl;
        return;
    }
    std::ofstream out(g.output);
    if (!out) throw std::runtime_error("cannot open output file: " + g.output);
    out << text << "\n";
}

FieldElement parse_alpha(const FieldCtx& Fq, const std::string& text) { return Fq.parse(text); }

int run(int argc, char** argv) {
    CLI::App app{"finite-field computations around a Niho-type permutation trinomial family"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--format", g.format, "output format: json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--output", g.output, "write the report to a file instead of stdout");
    app.add_option("--threads", g.threads, "worker count (0 = library default)");
    app.add_option("--seed", g.seed, "seed for sampled subcommands");
    app.add_option("--budget", g.budget, "exhaustive-scan dispatch budget for q^2")
        ->envname("PPTRI_BUDGET");
    app.add_flag("--timings", g.timings, "include wall-clock timings in reports");

    // pp-check
    std::uint32_t p = 11;
    unsigned k = 2;
    std::string alpha_text = "1", beta_text, h_text, mu_text, expect, method = "auto";
    auto* pp = app.add_subcommand("pp-check", "permutation verdict for one (p, k, alpha)");
    pp->add_option("--p", p, "odd prime")->required();
    pp->add_option("--k", k, "extension degree of q = p^k")->required();
    pp->add_option("--alpha", alpha_text, "alpha as integer or coefficient list")->required();
    pp->add_option("--method", method, "auto, exhaustive or mu")
        ->check(CLI::IsMember({"auto", "exhaustive", "mu"}));
    pp->add_option("--expect", expect, "fail (exit 1) unless the verdict matches")
        ->check(CLI::IsMember({"pp", "non-pp"}));

    // mu-check
    auto* mc = app.add_subcommand("mu-check", "mu_{q+1} enumeration self-checks");
    mc->add_option("--p", p)->required();
    mc->add_option("--k", k)->required();

    // lintri
    unsigned ell = 3, nstep = 1;
    std::string a_text = "1", b_text = "0";
    auto* lt = app.add_subcommand("lintri", "classify X^{p^n} - A X - B over F_{p^l}");
    lt->add_option("--p", p)->required();
    lt->add_option("--l", ell, "field degree l")->required();
    lt->add_option("--n", nstep, "Frobenius step n")->required();
    lt->add_option("--A", a_text, "A as coefficient list")->required();
    lt->add_option("--B", b_text, "B as coefficient list")->required();

    // charsum
    auto* cs = app.add_subcommand("charsum", "character sums S(mu) with the Weil bound flag");
    cs->add_option("--p", p)->required();
    cs->add_option("--k", k, "field degree (default 3)");
    cs->add_option("--mu", mu_text, "single mu; otherwise sweeps all of F_q^*");

    // curve-count
    std::string degrees_text = "1";
    auto* cc = app.add_subcommand("curve-count", "affine point count of the plane model over F_q");
    cc->add_option("--p", p)->required();
    cc->add_option("--k", k)->required();
    cc->add_option("--alpha", alpha_text)->required();
    cc->add_option("--degrees", degrees_text, "singular-probe degrees, comma separated (0 = skip)");

    // census
    std::string mask_text = "eta_zeta,eta_arg,mu_not_in_fp";
    auto* ce = app.add_subcommand("census", "count mu passing the documented condition mask");
    ce->add_option("--p", p)->required();
    ce->add_option("--mask", mask_text,
                   "conditions: eta_zeta, eta_arg, mu_nonzero, mu_not_in_fp (comma separated)");

    // k2-unique
    unsigned samples = 1;
    auto* ku = app.add_subcommand("k2-unique", "closed-form unique preimage at alpha = -1, k = 2");
    ku->add_option("--p", p)->required();
    ku->add_option("--h", h_text, "h as coefficient list; otherwise sampled");
    ku->add_option("--samples", samples, "number of sampled h when --h is absent");

    // k2-witness
    auto* kw = app.add_subcommand("k2-witness", "non-permutation certificate for k = 2, alpha != -1");
    kw->add_option("--p", p)->required();
    kw->add_option("--alpha", alpha_text)->required();

    // conjecture-table
    std::string ks_text = "1,2,3";
    auto* ct = app.add_subcommand("conjecture-table", "verdicts for every alpha in F_q^*");
    ct->add_option("--p", p)->required();
    ct->add_option("--k", ks_text, "comma-separated list of extension degrees");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (pp->parsed()) {
            const QuadExtCtx& F = quad_cache(p, k);
            FieldElement alpha = parse_alpha(F.base(), alpha_text);
            PermReport rep;
            if (method == "exhaustive") {
                rep = is_permutation_exhaustive(make_trinomial(F, alpha), 1ull << 28, g.threads);
            } else if (method == "mu") {
                rep = mu_collision_search(F, alpha);
            } else {
                VerdictConfig cfg;
                cfg.dispatch_budget = g.budget;
                cfg.threads = g.threads;
                rep = verdict(p, k, alpha, cfg);
            }
            if (g.format == "csv")
                emit(g, perm_report_csv_header() + "\n" + perm_report_csv_row(rep, g.timings));
            else if (g.format == "text")
                emit(g, std::string(rep.is_permutation ? "permutation" : "not_permutation"));
            else
                emit(g, perm_report_json(rep, g.timings).dump());
            if (!expect.empty()) {
                bool want_pp = expect == "pp";
                if (want_pp != rep.is_permutation) return 1;
            }
            return 0;
        }

        if (mc->parsed()) {
            const QuadExtCtx& F = quad_cache(p, k);
            MuGroup mu(F);
            std::uint64_t n = mu.size();
            bool ok = n == F.base().order_u64() + 1;
            bool has_one = false, has_minus_one = false;
            std::set<std::uint64_t> distinct;
            for (std::uint64_t j = 0; j < n; ++j) {
                QuadElement x = mu.at(j);
                distinct.insert(F.index_of_u64(x));
                if (x == F.one()) has_one = true;
                if (x == F.from_int(-1)) has_minus_one = true;
                if (F.pow(x, F.base().order() + 1) != F.one()) ok = false;
            }
            ok = ok && distinct.size() == n && has_one && has_minus_one;
            Json j;
            j["p"] = p;
            j["k"] = k;
            j["cardinality"] = n;
            j["all_members_check"] = ok;
            emit(g, j.dump());
            return ok ? 0 : 1;
        }

        if (lt->parsed()) {
            const FieldCtx& F = field_cache(p, ell);
            FieldElement A = F.parse(a_text), B = F.parse(b_text);
            auto inst = make_lintri(F, nstep, A, B);
            auto out = classify(inst);
            Json j;
            j["p"] = p;
            j["l"] = ell;
            j["n"] = nstep;
            j["A"] = F.format(A);
            j["B"] = F.format(B);
            j["case"] = out.kind == LinTriCase::NoRoots
                            ? "no_roots"
                            : (out.kind == LinTriCase::UniqueRoot ? "unique" : "kernel");
            j["root_count"] = out.root_count;
            Json roots = Json::array();
            for (const auto& r : out.roots) roots.push_back(F.format(r));
            j["roots"] = roots;
            if (out.kind == LinTriCase::Kernel) {
                j["base_root"] = F.format(out.base_root);
                j["tau"] = F.format(out.tau);
            }
            emit(g, j.dump());
            return 0;
        }

        if (cs->parsed()) {
            if (!cs->count("--k")) k = 3;
            const FieldCtx& F = field_cache(p, k);
            auto eta = build_eta_table(F);
            if (!mu_text.empty()) {
                auto mu = F.parse(mu_text);
                auto rep = weil_sum(F, mu, eta, g.threads);
                emit(g, g.format == "csv"
                            ? charsum_csv_header() + "\n" + charsum_csv_row(rep)
                            : charsum_report_json(rep).dump());
                return rep.satisfied ? 0 : 1;
            }
            std::ostringstream os;
            bool all_ok = true;
            if (g.format == "csv") os << charsum_csv_header() << "\n";
            Json arr = Json::array();
            for (std::uint64_t i = 1; i < F.order_u64(); ++i) {
                auto rep = weil_sum(F, F.element_at_u64(i), eta, g.threads);
                all_ok = all_ok && rep.satisfied;
                if (g.format == "csv")
                    os << charsum_csv_row(rep) << "\n";
                else
                    arr.push_back(charsum_report_json(rep));
            }
            emit(g, g.format == "csv" ? os.str() : arr.dump());
            return all_ok ? 0 : 1;
        }

        if (cc->parsed()) {
            const QuadExtCtx& F = quad_cache(p, k);
            FieldElement alpha = parse_alpha(F.base(), alpha_text);
            auto spec = build_F_alpha(F, alpha);
            auto G = build_D_model(spec);
            auto rep = count_points_fiberwise(F.base(), G, alpha, p, g.threads);
            Json j = pointcount_report_json(rep, p, k);
            if (degrees_text != "0") {
                std::vector<unsigned> degs;
                std::stringstream ss(degrees_text);
                std::string tok;
                while (std::getline(ss, tok, ',')) degs.push_back(std::stoul(tok));
                auto probe = singular_probe(spec, degs);
                Json pj = Json::array();
                for (const auto& d : probe.per_degree) {
                    Json e;
                    e["rel_degree"] = d.rel_degree;
                    e["xy_zero_singulars"] = d.xy_zero_singulars;
                    e["type3_count"] = d.type3.size();
                    Json diag = Json::array();
                    for (const auto& r : d.diag_multiple_roots)
                        diag.push_back(r.ctx->format(r));
                    e["diag_multiple_roots"] = diag;
                    pj.push_back(e);
                }
                j["singular_probe"] = pj;
            }
            emit(g, j.dump());
            return rep.within_bounds ? 0 : 1;
        }

        if (ce->parsed()) {
            CensusMask mask;
            mask.eta_zeta_neg = mask_text.find("eta_zeta") != std::string::npos;
            mask.eta_arg_neg = mask_text.find("eta_arg") != std::string::npos;
            mask.mu_nonzero = mask_text.find("mu_nonzero") != std::string::npos;
            mask.mu_not_in_fp = mask_text.find("mu_not_in_fp") != std::string::npos;
            auto rep = mu_census(p, mask);
            emit(g, census_report_json(rep).dump());
            return 0;
        }

        if (ku->parsed()) {
            const QuadExtCtx& F = quad_cache(p, 2);
            if (!h_text.empty()) {
                auto h = F.parse(h_text);
                auto res = k2_uniqueness(F, h);
                emit(g, k2_unique_json(F, h, res).dump());
                return 0;
            }
            std::mt19937_64 rng(g.seed);
            Json arr = Json::array();
            for (unsigned s = 0; s < samples; ++s) {
                QuadElement h;
                do {
                    h = F.element_at_u64(rng() % F.order_u64());
                } while (F.conj(h) == h);
                arr.push_back(k2_unique_json(F, h, k2_uniqueness(F, h)));
            }
            emit(g, arr.dump());
            return 0;
        }

        if (kw->parsed()) {
            const QuadExtCtx& F = quad_cache(p, 2);
            FieldElement alpha = parse_alpha(F.base(), alpha_text);
            auto w = k2_nonperm_witness(F, alpha);
            emit(g, k2_witness_json(F, w).dump());
            return 0;
        }

        if (ct->parsed()) {
            std::vector<unsigned> ks;
            std::stringstream ss(ks_text);
            std::string tok;
            while (std::getline(ss, tok, ',')) ks.push_back(std::stoul(tok));
            VerdictConfig cfg;
            cfg.dispatch_budget = g.budget;
            cfg.threads = g.threads;
            auto rows = conjecture_table(p, ks, cfg);
            std::ostringstream os;
            if (g.format == "csv") {
                os << perm_report_csv_header() << "\n";
                for (const auto& r : rows) os << perm_report_csv_row(r, g.timings) << "\n";
            } else {
                for (const auto& r : rows) os << perm_report_json(r, g.timings).dump() << "\n";
            }
            std::string text = os.str();
            if (!text.empty() && text.back() == '\n') text.pop_back();
            emit(g, text);
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
