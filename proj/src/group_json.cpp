#include "lpw/group_json.hpp"

#include <sstream>
#include <stdexcept>

namespace lpw {

namespace {

std::string trim(std::string_view s)
{
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

// Split on commas at bracket depth zero.
std::vector<std::string> split_top(std::string_view s, char sep = ',')
{
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(' || c == '{' || c == '[') ++depth;
        if (c == ')' || c == '}' || c == ']') --depth;
        if (c == sep && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
    return out;
}

std::vector<double> parse_reals(std::string_view s)
{
    std::vector<double> x;
    for (const auto& part : split_top(s)) {
        if (part.empty()) continue;
        x.push_back(BigRational::parse(part).to_double());
    }
    return x;
}

std::string real_str(const std::vector<double>& x)
{
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
    return os.str();
}

}  // namespace

Json to_json(const BigRational& v)
{
    return v.str();
}

BigRational rational_from_json(const Json& j)
{
    if (j.is_string()) return BigRational::parse(j.get<std::string>());
    if (j.is_number_integer()) return BigRational(j.get<long>());
    throw std::invalid_argument("expected a rational string, got " + j.dump());
}

Json to_json(const GroupDescriptor& g)
{
    Json j;
    j["variant"] = to_string(g.kind);
    switch (g.kind) {
    case GroupKind::Pruefer: j["p"] = g.p; break;
    case GroupKind::Rationals:
        if (g.chain.is_factorial()) {
            j["chain"] = "factorial";
        } else {
            Json terms = Json::array();
            for (const auto& t : g.chain.prefix()) terms.push_back(t.get_str());
            j["chain"] = terms;
        }
        break;
    case GroupKind::DirectSum: {
        Json s = Json::array();
        for (const auto& f : g.factors) s.push_back(to_json(f));
        j["summands"] = s;
        break;
    }
    case GroupKind::Circle: break;
    case GroupKind::Real: j["d"] = g.dim; break;
    case GroupKind::Product:
        j["d"] = g.dim;
        j["h"] = to_json(g.factors.at(0));
        break;
    }
    return j;
}

GroupDescriptor group_from_json(const Json& j)
{
    const std::string v = j.at("variant").get<std::string>();
    if (v == "pruefer") return GroupDescriptor::pruefer(j.at("p").get<std::uint64_t>());
    if (v == "rationals") {
        const Json& c = j.at("chain");
        if (c.is_string() && c.get<std::string>() == "factorial") return GroupDescriptor::rationals();
        std::vector<BigInt> terms;
        for (const auto& t : c) terms.push_back(parse_bigint(t.get<std::string>()));
        return GroupDescriptor::rationals(Chain::explicit_prefix(std::move(terms)));
    }
    if (v == "sum") {
        std::vector<GroupDescriptor> s;
        for (const auto& f : j.at("summands")) s.push_back(group_from_json(f));
        return GroupDescriptor::direct_sum(std::move(s));
    }
    if (v == "circle") return GroupDescriptor::circle();
    if (v == "real") return GroupDescriptor::real(j.at("d").get<int>());
    if (v == "product") return GroupDescriptor::product(j.at("d").get<int>(), group_from_json(j.at("h")));
    throw std::invalid_argument("unknown group variant: " + v);
}

Json to_json(const GroupPoint& x)
{
    Json j;
    if (const auto* p = x.as<PrueferPoint>()) {
        j["variant"] = "pruefer";
        j["p"] = p->p;
        j["value"] = p->value().str();
    } else if (const auto* r = x.as<RationalPoint>()) {
        j["variant"] = "rationals";
        j["value"] = r->value.str();
    } else if (const auto* s = x.as<SumPoint>()) {
        j["variant"] = "sum";
        Json c = Json::object();
        for (const auto& [idx, v] : s->coords) c[std::to_string(idx)] = to_json(*v);
        j["coords"] = c;
    } else if (const auto* c = x.as<CirclePoint>()) {
        j["variant"] = "circle";
        j["t"] = c->t.str();
    } else if (const auto* rp = x.as<RealPoint>()) {
        j["variant"] = "real";
        j["x"] = rp->x;
    } else if (const auto* pp = x.as<ProductPoint>()) {
        j["variant"] = "product";
        j["r"] = pp->r.x;
        j["h"] = to_json(*pp->h);
    }
    return j;
}

GroupPoint point_from_json(const Json& j)
{
    const std::string v = j.at("variant").get<std::string>();
    if (v == "pruefer") return pruefer_point(j.at("p").get<std::uint64_t>(), rational_from_json(j.at("value")));
    if (v == "rationals") return rational_point(rational_from_json(j.at("value")));
    if (v == "circle") return circle_point(rational_from_json(j.at("t")));
    if (v == "real") return real_point(j.at("x").get<std::vector<double>>());
    if (v == "product") return product_point(j.at("r").get<std::vector<double>>(), point_from_json(j.at("h")));
    if (v == "sum") {
        std::vector<std::pair<std::size_t, GroupPoint>> coords;
        for (const auto& [k, p] : j.at("coords").items()) coords.emplace_back(std::stoul(k), point_from_json(p));
        return sum_point(std::move(coords));
    }
    throw std::invalid_argument("unknown point variant: " + v);
}

GroupDescriptor parse_group_spec(std::string_view text)
{
    const std::string s = trim(text);
    auto after = [&](std::string_view prefix) { return s.substr(prefix.size()); };
    auto inner = [&](std::string_view prefix) {
        if (s.back() != ')') throw std::invalid_argument("unbalanced group spec: " + s);
        return s.substr(prefix.size(), s.size() - prefix.size() - 1);
    };
    if (s.rfind("pruefer:", 0) == 0) return GroupDescriptor::pruefer(std::stoull(after("pruefer:")));
    if (s == "rationals" || s == "rationals:factorial") return GroupDescriptor::rationals();
    if (s.rfind("rationals:explicit:", 0) == 0) {
        std::vector<BigInt> terms;
        for (const auto& t : split_top(after("rationals:explicit:"))) terms.push_back(parse_bigint(t));
        return GroupDescriptor::rationals(Chain::explicit_prefix(std::move(terms)));
    }
    if (s == "circle") return GroupDescriptor::circle();
    if (s.rfind("real:", 0) == 0) return GroupDescriptor::real(std::stoi(after("real:")));
    if (s.rfind("sum(", 0) == 0) {
        std::vector<GroupDescriptor> parts;
        for (const auto& p : split_top(inner("sum("))) parts.push_back(parse_group_spec(p));
        return GroupDescriptor::direct_sum(std::move(parts));
    }
    if (s.rfind("product(", 0) == 0) {
        const auto parts = split_top(inner("product("));
        if (parts.size() != 2) throw std::invalid_argument("product spec needs (d,H): " + s);
        return GroupDescriptor::product(std::stoi(parts[0]), parse_group_spec(parts[1]));
    }
    throw std::invalid_argument("unknown group spec: " + s);
}

GroupPoint parse_point(const GroupDescriptor& g, std::string_view text)
{
    const std::string s = trim(text);
    switch (g.kind) {
    case GroupKind::Pruefer: return pruefer_point(g.p, BigRational::parse(s));
    case GroupKind::Rationals: return rational_point(BigRational::parse(s));
    case GroupKind::Circle: return circle_point(BigRational::parse(s));
    case GroupKind::Real: {
        auto x = parse_reals(s);
        if (x.size() != static_cast<std::size_t>(g.dim)) throw GroupMismatch("point dimension does not match group");
        return real_point(std::move(x));
    }
    case GroupKind::DirectSum: {
        if (s.size() < 2 || s.front() != '{' || s.back() != '}') throw std::invalid_argument("sum point must look like {1:1/2}");
        std::vector<std::pair<std::size_t, GroupPoint>> coords;
        for (const auto& entry : split_top(s.substr(1, s.size() - 2))) {
            if (entry.empty()) continue;
            const auto colon = entry.find(':');
            if (colon == std::string::npos) throw std::invalid_argument("bad sum coordinate: " + entry);
            const std::size_t j = std::stoul(entry.substr(0, colon));
            if (j < 1 || j > g.factors.size()) throw GroupMismatch("sum coordinate index out of range");
            coords.emplace_back(j, parse_point(g.factors[j - 1], entry.substr(colon + 1)));
        }
        return sum_point(std::move(coords));
    }
    case GroupKind::Product: {
        if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw std::invalid_argument("product point must look like (r;h)");
        const auto parts = split_top(s.substr(1, s.size() - 2), ';');
        if (parts.size() != 2) throw std::invalid_argument("product point must look like (r;h)");
        auto r = parse_reals(parts[0]);
        if (r.size() != static_cast<std::size_t>(g.dim)) throw GroupMismatch("point dimension does not match group");
        return product_point(std::move(r), parse_point(g.factors.at(0), parts[1]));
    }
    }
    throw std::invalid_argument("parse_point: unknown group");
}

std::string point_str(const GroupPoint& x)
{
    if (const auto* p = x.as<PrueferPoint>()) return p->value().str();
    if (const auto* r = x.as<RationalPoint>()) return r->value.str();
    if (const auto* c = x.as<CirclePoint>()) return c->t.str();
    if (const auto* rp = x.as<RealPoint>()) return real_str(rp->x);
    if (const auto* s = x.as<SumPoint>()) {
        std::string out = "{";
        for (std::size_t i = 0; i < s->coords.size(); ++i)
            out += (i ? "," : "") + std::to_string(s->coords[i].first) + ":" + point_str(*s->coords[i].second);
        return out + "}";
    }
    if (const auto* pp = x.as<ProductPoint>()) return "(" + real_str(pp->r.x) + ";" + point_str(*pp->h) + ")";
    return "?";
}

}  // namespace lpw
