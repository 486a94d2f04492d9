#pragma once

#include <json.hpp>
#include <string>

#include "cycdt/prover.hpp"
#include "cycdt/rewrite.hpp"
#include "cycdt/termcheck.hpp"

namespace cyc::report {

using nlohmann::ordered_json;

ordered_json trace_json(const Trace& tr, bool with_steps);
std::string trace_text(const Trace& tr);

ordered_json proof_json(const ProofResult& r);
std::string proof_text(const ProofResult& r);

ordered_json bisim_json(const BisimResult& r);

ordered_json gs_json(const GSReport& r);
std::string gs_text(const GSReport& r);

ordered_json rule_json(const RewriteRule& r);
std::string rule_text(const RewriteRule& r);

}  // namespace cyc::report
