#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "pptri/charsum.hpp"
#include "pptri/conjecture.hpp"
#include "pptri/curvelab.hpp"
#include "pptri/permlab.hpp"

namespace pptri {

using Json = nlohmann::ordered_json;

// elapsed_ms is emitted as 0 unless timings are requested, so identical
// configurations produce byte-identical output
Json perm_report_json(const PermReport& rep, bool with_timing = false);
std::string perm_report_csv_header();
std::string perm_report_csv_row(const PermReport& rep, bool with_timing = false);

Json charsum_report_json(const CharSumReport& rep);
std::string charsum_csv_header();
std::string charsum_csv_row(const CharSumReport& rep);

Json pointcount_report_json(const PointCountReport& rep, std::uint32_t p, unsigned k);
Json census_report_json(const CensusReport& rep);
Json k2_unique_json(const QuadExtCtx& ctx2, const QuadElement& h, const K2UniqueResult& res);
Json k2_witness_json(const QuadExtCtx& ctx2, const K2Witness& w);

// witness pair in CSV-safe form: coefficients joined by ':', elements by '|'
std::string witness_csv(const QuadExtCtx& ctx2, const std::pair<QuadElement, QuadElement>& w);

}  // namespace pptri
