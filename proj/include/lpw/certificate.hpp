#pragma once

#include <string>
#include <vector>

#include "lpw/group_json.hpp"

namespace lpw {

class WeightFn;

enum class Verdict { Holds, Fails, Inconclusive };

const char* to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

/// Machine-checkable record of one verified property. Rationals in the payload
/// are "num/den" strings, so serialization round-trips exactly. There is no
/// timestamp: identical inputs give identical bytes.
struct Certificate {
    std::string property;
    Json weight = nullptr;
    Json window = nullptr;
    Json truncation = nullptr;
    Verdict verdict = Verdict::Inconclusive;
    bool rigorous = true;
    Json payload = Json::object();
    Json witness = nullptr;
    std::vector<std::string> notes;
    std::string id;

    bool holds() const { return verdict == Verdict::Holds; }
    /// Fills id from the content hash; call after the fields are final.
    Certificate& seal();
    Json to_json() const;
    static Certificate from_json(const Json& j);
};

/// Short reference to a weight for certificates: construction, group and scale.
Json weight_ref(const WeightFn& w);

/// Combined verdict: fails beats inconclusive beats holds.
Verdict combine(Verdict a, Verdict b);

/// 0 if all hold, 1 if any fails, 3 if any is inconclusive.
int exit_code(const std::vector<Certificate>& certs);

Json bundle(const std::vector<Certificate>& certs);

}  // namespace lpw
