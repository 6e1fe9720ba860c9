#include "pptri/report.hpp"

#include <sstream>

namespace pptri {
namespace {

std::string join_colon(const std::string& comma_text) {
    std::string out = comma_text;
    for (auto& c : out)
        if (c == ',') c = ':';
    return out;
}

}  // namespace

std::string witness_csv(const QuadExtCtx& ctx2, const std::pair<QuadElement, QuadElement>& w) {
    return join_colon(ctx2.format(w.first)) + "|" + join_colon(ctx2.format(w.second));
}

Json perm_report_json(const PermReport& rep, bool with_timing) {
    const QuadExtCtx& F = quad_cache(rep.p, rep.k);
    Json j;
    j["p"] = rep.p;
    j["k"] = rep.k;
    j["alpha"] = F.base().format(rep.alpha);
    j["verdict"] = rep.is_permutation ? "permutation" : "not_permutation";
    j["method"] = rep.method == PermMethod::Exhaustive ? "exhaustive" : "mu_collision";
    if (rep.witness) {
        Json w;
        w["x"] = F.format(rep.witness->first);
        w["y"] = F.format(rep.witness->second);
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    j["elapsed_ms"] = with_timing ? rep.elapsed_ms : 0.0;
    return j;
}

std::string perm_report_csv_header() { return "p,k,alpha,verdict,method,witness,elapsed_ms"; }

std::string perm_report_csv_row(const PermReport& rep, bool with_timing) {
    const QuadExtCtx& F = quad_cache(rep.p, rep.k);
    std::ostringstream os;
    os << rep.p << ',' << rep.k << ',' << join_colon(F.base().format(rep.alpha)) << ','
       << (rep.is_permutation ? "permutation" : "not_permutation") << ','
       << (rep.method == PermMethod::Exhaustive ? "exhaustive" : "mu_collision") << ',';
    if (rep.witness) os << witness_csv(F, *rep.witness);
    os << ',' << (with_timing ? rep.elapsed_ms : 0.0);
    return os.str();
}

Json charsum_report_json(const CharSumReport& rep) {
    Json j;
    j["q"] = rep.q.get_str();
    j["mu"] = rep.mu.ctx->format(rep.mu);
    j["sum_value"] = rep.sum;
    j["bound"] = rep.bound;
    j["satisfied"] = rep.satisfied;
    return j;
}

std::string charsum_csv_header() { return "mu,S,bound_ok"; }

std::string charsum_csv_row(const CharSumReport& rep) {
    std::ostringstream os;
    os << join_colon(rep.mu.ctx->format(rep.mu)) << ',' << rep.sum << ','
       << (rep.satisfied ? 1 : 0);
    return os.str();
}

Json pointcount_report_json(const PointCountReport& rep, std::uint32_t p, unsigned k) {
    Json j;
    j["p"] = p;
    j["k"] = k;
    j["q"] = rep.q.get_str();
    j["alpha"] = rep.alpha.ctx->format(rep.alpha);
    j["affine_count"] = rep.affine_count;
    j["excluded_count"] = rep.excluded_count;
    j["lower_bound"] = rep.lower_bound;
    j["upper_bound"] = rep.upper_bound;
    j["within_bounds"] = rep.within_bounds;
    return j;
}

Json census_report_json(const CensusReport& rep) {
    Json j;
    j["p"] = rep.p;
    j["total"] = rep.total;
    j["qualifying_count"] = rep.qualifying;
    j["zeta_count"] = rep.zeta_count;
    j["roots_per_zeta"] = rep.roots_per_zeta;
    j["max_shared_mu"] = rep.max_shared_mu;
    Json mask = Json::array();
    mask.push_back("zeta_norm_minus_one");
    mask.push_back("mu_solves_zeta_equation");
    if (rep.mask.eta_zeta_neg) mask.push_back("eta_zeta_minus_one");
    if (rep.mask.eta_arg_neg) mask.push_back("eta_arg_minus_one");
    if (rep.mask.mu_nonzero) mask.push_back("mu_nonzero");
    if (rep.mask.mu_not_in_fp) mask.push_back("mu_not_in_fp");
    j["condition_mask"] = mask;
    return j;
}

Json k2_unique_json(const QuadExtCtx& ctx2, const QuadElement& h, const K2UniqueResult& res) {
    Json j;
    j["p"] = ctx2.char_p();
    j["h"] = ctx2.format(h);
    j["u"] = ctx2.format(res.u);
    j["x"] = ctx2.format(res.X);
    j["via_closed_form"] = res.via_closed_form;
    j["degenerate_branch_seen"] = res.degenerate_branch_seen;
    return j;
}

Json k2_witness_json(const QuadExtCtx& ctx2, const K2Witness& w) {
    Json j;
    j["p"] = ctx2.char_p();
    j["kind"] = w.kind == K2CertKind::Collision ? "collision" : "missed_value";
    j["h"] = ctx2.format(w.h);
    j["value"] = ctx2.format(w.value);
    if (w.kind == K2CertKind::Collision) {
        j["x1"] = ctx2.format(w.X1);
        j["x2"] = ctx2.format(w.X2);
        j["gamma1"] = ctx2.format(w.gamma1);
        j["gamma2"] = ctx2.format(w.gamma2);
    } else {
        j["x1"] = nullptr;
        j["x2"] = nullptr;
        j["gamma1"] = nullptr;
        j["gamma2"] = nullptr;
    }
    j["h_candidates_tried"] = w.h_candidates_tried;
    return j;
}

}  // namespace pptri
