#include "lpw/window.hpp"

#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lpw {

namespace {

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

BigInt random_below(std::mt19937_64& rng, const BigInt& n)
{
    // Layer sizes in practice fit in 64 bits.
    if (!n.fits_ulong_p()) throw std::out_of_range("sample range too large");
    std::uniform_int_distribution<unsigned long> d(0, n.get_ui() - 1);
    return BigInt(d(rng));
}

GroupPoint random_nonzero(std::mt19937_64& rng, const GroupDescriptor& g, int layer)
{
    switch (g.kind) {
    case GroupKind::Pruefer: {
        const BigInt size = pow(BigInt(static_cast<unsigned long>(g.p)), static_cast<unsigned long>(layer));
        const BigInt k = random_below(rng, size - 1) + 1;
        return pruefer_point(g.p, BigRational(k, size));
    }
    case GroupKind::Rationals: {
        // Nonzero element of Q_layer in [-2, 2].
        const BigInt t = g.chain.term(layer);
        const BigInt k = random_below(rng, 4 * t) + 1;
        const bool neg = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
        const BigRational v(neg ? BigInt(-k) : k, t);
        return rational_point(v);
    }
    default: throw std::invalid_argument("sampled windows need Pruefer or rational summands");
    }
}

}  // namespace

Truncation Truncation::parse(std::string_view text)
{
    Truncation t;
    if (text == "full") {
        t.closed_form = true;
        return t;
    }
    bool any = false;
    for (const auto& part : split(text, ',')) {
        const auto eq = part.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("truncation must look like N=8 or N=5,B=40 or L=6");
        const std::string key = part.substr(0, eq);
        const long v = std::stol(part.substr(eq + 1));
        if (v < 1) throw std::invalid_argument("truncation cutoffs must be positive");
        if (key == "N" || key == "L") {
            t.layers = static_cast<int>(v);
        } else if (key == "B") {
            t.range = v;
        } else {
            throw std::invalid_argument("unknown truncation key: " + key);
        }
        any = true;
    }
    if (!any) throw std::invalid_argument("empty truncation spec");
    return t;
}

Json Truncation::to_json() const
{
    Json j;
    if (closed_form) {
        j["mode"] = "closed-form";
    } else {
        j["N"] = layers;
        j["B"] = range;
    }
    return j;
}

bool Window::negation_closed() const
{
    std::set<std::string> keys;
    for (const auto& x : points) keys.insert(point_str(x));
    for (const auto& x : points)
        if (!keys.count(point_str(neg(x)))) return false;
    return true;
}

Json Window::to_json() const
{
    Json j;
    j["spec"] = spec;
    j["group"] = group.name();
    j["size"] = points.size();
    if (seeded) j["seed"] = seed;
    if (spec.rfind("points:", 0) == 0) {
        Json pts = Json::array();
        for (const auto& x : points) pts.push_back(point_str(x));
        j["points"] = pts;
    }
    return j;
}

Window pruefer_layer_window(std::uint64_t p, int n)
{
    if (n < 0) throw std::invalid_argument("layer must be nonnegative");
    Window w;
    w.spec = "G_" + std::to_string(n);
    w.group = GroupDescriptor::pruefer(p);
    const BigInt size = pow(BigInt(static_cast<unsigned long>(p)), static_cast<unsigned long>(n));
    if (size > 1000000) throw std::invalid_argument("window G_n too large");
    for (BigInt k = 0; k < size; ++k) w.points.push_back(pruefer_point(p, BigRational(k, size)));
    return w;
}

Window rationals_window(const GroupDescriptor& g, int n, long bound)
{
    if (g.kind != GroupKind::Rationals) throw GroupMismatch("Q_n window on a non-rational group");
    Window w;
    w.spec = "Q_" + std::to_string(n) + ":" + std::to_string(bound);
    w.group = g;
    const BigInt t = g.chain.term(n);
    const BigInt K = t * bound;
    if (K > 1000000) throw std::invalid_argument("window Q_n too large");
    for (BigInt k = -K; k <= K; ++k) w.points.push_back(rational_point(BigRational(k, t)));
    return w;
}

Window sampled_sum_window(const GroupDescriptor& g, std::size_t count, int layer, std::uint64_t seed)
{
    if (g.kind != GroupKind::DirectSum) throw GroupMismatch("sampled window needs a direct sum");
    Window w;
    w.spec = "sample:" + std::to_string(count) + ":" + std::to_string(layer) + ":" + std::to_string(seed);
    w.group = g;
    w.seed = seed;
    w.seeded = true;
    std::mt19937_64 rng(seed);
    std::set<std::string> seen;
    auto push = [&](const GroupPoint& x) {
        w.points.push_back(x);
        seen.insert(point_str(x));
    };
    push(identity(g));
    const std::size_t k = g.factors.size();
    std::bernoulli_distribution coin(0.5);
    std::size_t attempts = 0;
    while (w.points.size() < count) {
        if (++attempts > 100 * count + 1000) throw std::runtime_error("could not fill the sampled window");
        std::vector<std::pair<std::size_t, GroupPoint>> coords;
        for (std::size_t j = 1; j <= k; ++j)
            if (coin(rng)) coords.emplace_back(j, random_nonzero(rng, g.factors[j - 1], layer));
        if (coords.empty()) continue;
        const GroupPoint x = sum_point(std::move(coords));
        if (seen.count(point_str(x))) continue;
        const GroupPoint nx = neg(x);
        if (nx == x) {
            push(x);
        } else if (w.points.size() + 2 <= count) {
            push(x);
            push(nx);
        }
    }
    return w;
}

Window circle_grid(long K)
{
    if (K < 1) throw std::invalid_argument("grid size must be positive");
    Window w;
    w.spec = "grid:" + std::to_string(K);
    w.group = GroupDescriptor::circle();
    for (long k = 0; k < K; ++k) w.points.push_back(circle_point(BigRational(BigInt(k), BigInt(K))));
    return w;
}

Window real_grid(double a, double b, int n)
{
    if (n < 2 || !(a < b)) throw std::invalid_argument("real grid needs n >= 2 and a < b");
    if (a != -b) throw std::invalid_argument("real grid must be symmetric about 0 to be negation-closed");
    Window w;
    std::ostringstream os;
    os << "grid:" << a << ":" << b << ":" << n;
    w.spec = os.str();
    w.group = GroupDescriptor::real(1);
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) xs[i] = a + (b - a) * i / (n - 1);
    for (int i = 0; i < n / 2; ++i) xs[n - 1 - i] = -xs[i];
    if (n % 2 == 1) xs[n / 2] = 0.0;
    for (double x : xs) w.points.push_back(real_point({x}));
    return w;
}

Window explicit_window(const GroupDescriptor& g, std::vector<GroupPoint> points)
{
    Window w;
    w.group = g;
    std::set<std::string> seen;
    std::string spec = "points:";
    for (const auto& x : points) {
        if (!belongs(g, x)) throw GroupMismatch("window point not in the group");
        for (const GroupPoint& y : {x, neg(x)}) {
            if (seen.insert(point_str(y)).second) w.points.push_back(y);
        }
    }
    for (std::size_t i = 0; i < w.points.size(); ++i) spec += (i ? ";" : "") + point_str(w.points[i]);
    w.spec = spec;
    return w;
}

Window make_window(const GroupDescriptor& g, std::string_view spec)
{
    const std::string s(spec);
    if (s.rfind("G_", 0) == 0) {
        if (g.kind != GroupKind::Pruefer) throw GroupMismatch("G_n windows are for Pruefer groups");
        return pruefer_layer_window(g.p, std::stoi(s.substr(2)));
    }
    if (s.rfind("Q_", 0) == 0) {
        const auto parts = split(s.substr(2), ':');
        if (parts.size() != 2) throw std::invalid_argument("rational window must look like Q_3:3");
        return rationals_window(g, std::stoi(parts[0]), std::stol(parts[1]));
    }
    if (s.rfind("sample:", 0) == 0) {
        const auto parts = split(s.substr(7), ':');
        if (parts.size() != 3) throw std::invalid_argument("sample window must look like sample:COUNT:LAYER:SEED");
        return sampled_sum_window(g, std::stoul(parts[0]), std::stoi(parts[1]), std::stoull(parts[2]));
    }
    if (s.rfind("grid:", 0) == 0) {
        const auto parts = split(s.substr(5), ':');
        if (parts.size() == 1) {
            if (g.kind != GroupKind::Circle) throw GroupMismatch("grid:K windows are for the circle");
            return circle_grid(std::stol(parts[0]));
        }
        if (parts.size() == 3) {
            if (g.kind != GroupKind::Real || g.dim != 1) throw GroupMismatch("grid:a:b:n windows are for R^1");
            return real_grid(std::stod(parts[0]), std::stod(parts[1]), std::stoi(parts[2]));
        }
        throw std::invalid_argument("grid window must look like grid:K or grid:a:b:n");
    }
    if (s.rfind("points:", 0) == 0) {
        std::vector<GroupPoint> pts;
        for (const auto& p : split(s.substr(7), ';'))
            if (!p.empty()) pts.push_back(parse_point(g, p));
        return explicit_window(g, std::move(pts));
    }
    throw std::invalid_argument("unknown window spec: " + s);
}

}  // namespace lpw
