#pragma once

#include <string>

#include <json.hpp>

namespace qflux {

using Json = nlohmann::ordered_json;

enum class Verdict { PASS, FAIL, SKIP };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::PASS: return "PASS";
    case Verdict::FAIL: return "FAIL";
    case Verdict::SKIP: return "SKIP";
  }
  return "?";
}

// One certified claim about one region. FAIL always carries a concrete
// counterexample in the witness payload.
struct Certification {
  std::string name;
  Verdict verdict = Verdict::SKIP;
  Json witness;
  std::string region_id;

  bool pass() const { return verdict == Verdict::PASS; }
};

} // namespace qflux
