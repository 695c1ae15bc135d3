#include "lpw/certificate.hpp"

#include <cstdio>
#include <stdexcept>

#include "lpw/weight.hpp"

namespace lpw {

namespace {

std::uint64_t fnv1a(const std::string& s)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

Json body(const Certificate& c)
{
    Json j;
    j["schema"] = "lpw.certificate/1";
    j["property"] = c.property;
    j["verdict"] = to_string(c.verdict);
    j["rigorous"] = c.rigorous;
    j["weight"] = c.weight;
    j["window"] = c.window;
    j["truncation"] = c.truncation;
    j["payload"] = c.payload;
    j["witness"] = c.witness;
    j["notes"] = c.notes;
    return j;
}

}  // namespace

const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

Verdict verdict_from_string(const std::string& s)
{
    if (s == "holds") return Verdict::Holds;
    if (s == "fails") return Verdict::Fails;
    if (s == "inconclusive") return Verdict::Inconclusive;
    throw std::invalid_argument("unknown verdict: " + s);
}

Certificate& Certificate::seal()
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(body(*this).dump())));
    id = property + "-" + buf;
    return *this;
}

Json Certificate::to_json() const
{
    Json j;
    j["id"] = id;
    const Json b = body(*this);
    for (auto& [k, v] : b.items()) j[k] = v;
    return j;
}

Certificate Certificate::from_json(const Json& j)
{
    if (j.at("schema").get<std::string>() != "lpw.certificate/1") throw std::invalid_argument("unsupported certificate schema");
    Certificate c;
    c.id = j.at("id").get<std::string>();
    c.property = j.at("property").get<std::string>();
    c.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    c.rigorous = j.at("rigorous").get<bool>();
    c.weight = j.at("weight");
    c.window = j.at("window");
    c.truncation = j.at("truncation");
    c.payload = j.at("payload");
    c.witness = j.at("witness");
    c.notes = j.at("notes").get<std::vector<std::string>>();
    return c;
}

Json weight_ref(const WeightFn& w)
{
    Json j;
    j["construction"] = w.construction();
    j["group"] = w.group().name();
    j["scale"] = w.scale().str();
    if (const auto* b = std::get_if<BuiltinNode>(&w.node().data)) j["name"] = b->name;
    return j;
}

Verdict combine(Verdict a, Verdict b)
{
    if (a == Verdict::Fails || b == Verdict::Fails) return Verdict::Fails;
    if (a == Verdict::Inconclusive || b == Verdict::Inconclusive) return Verdict::Inconclusive;
    return Verdict::Holds;
}

int exit_code(const std::vector<Certificate>& certs)
{
    Verdict v = Verdict::Holds;
    for (const auto& c : certs) v = combine(v, c.verdict);
    switch (v) {
    case Verdict::Holds: return 0;
    case Verdict::Fails: return 1;
    case Verdict::Inconclusive: return 3;
    }
    return 3;
}

Json bundle(const std::vector<Certificate>& certs)
{
    Json arr = Json::array();
    for (const auto& c : certs) arr.push_back(c.to_json());
    return arr;
}

}  // namespace lpw
