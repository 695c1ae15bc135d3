#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "lpw/certify.hpp"
#include "lpw/cli.hpp"
#include "lpw/continuous.hpp"
#include "lpw/countex.hpp"
#include "lpw/domar.hpp"
#include "lpw/sigma.hpp"
#include "lpw/suite.hpp"

namespace py = pybind11;
using namespace lpw;

namespace {

py::object to_py(const Json& j)
{
    return py::module_::import("json").attr("loads")(j.dump());
}

py::object cert_py(const Certificate& c)
{
    return to_py(c.to_json());
}

GroupPoint point(const WeightFn& w, const std::string& x)
{
    return parse_point(w.group(), x);
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Weights for L_p convolution algebras: constructions and certificates";

    py::register_exception<GroupMismatch>(m, "GroupMismatch", PyExc_ValueError);

    py::class_<WeightFn>(m, "Weight")
        .def_property_readonly("construction", &WeightFn::construction)
        .def_property_readonly("group", [](const WeightFn& w) { return w.group().name(); })
        .def_property_readonly("scale", [](const WeightFn& w) { return w.scale().str(); })
        .def_property_readonly("exact", &WeightFn::exact)
        .def("value", [](const WeightFn& w, const std::string& x) { return w.value(point(w, x)).str(); })
        .def("eval", [](const WeightFn& w, const std::string& x) { return w.eval(point(w, x)); })
        .def("b_bound",
             [](const WeightFn& w) -> std::optional<std::string> {
                 auto b = w.b_bound();
                 if (!b) return std::nullopt;
                 return b->str();
             })
        .def("scaled", [](const WeightFn& w, const std::string& f) { return w.scaled(BigRational::parse(f)); })
        .def("provenance", [](const WeightFn& w) { return to_py(w.provenance()); })
        .def("__repr__", [](const WeightFn& w) { return "<Weight " + weight_ref(w).dump() + ">"; });

    m.def("pruefer_weight", &pruefer_weight, py::arg("p"));
    m.def("rationals_weight", py::overload_cast<>(&rationals_weight));
    m.def("direct_sum_weight", py::overload_cast<std::vector<WeightFn>>(&direct_sum_weight), py::arg("summands"));
    m.def("euclidean_weight", &euclidean_weight, py::arg("d"), py::arg("normalize") = true);
    m.def("product_weight", &product_weight, py::arg("uR"), py::arg("uH"));
    m.def("builtin_weight", &builtin_weight, py::arg("name"));
    m.def("builtin_names", &builtin_names);
    m.def(
        "algebra_weight", [](const WeightFn& u, const std::string& p) { return algebra_weight(u, BigRational::parse(p)); },
        py::arg("u"), py::arg("p"));
    m.def(
        "scale_for_b", [](const WeightFn& u, const std::string& b) { return scale_for_b(u, BigRational::parse(b)); },
        py::arg("u"), py::arg("bound"));
    m.def("auto_scale", &auto_scale, py::arg("u"));
    m.def("load_weight", &load_weight, py::arg("ref"));
    m.def(
        "from_provenance", [](const std::string& text) { return WeightFn::from_provenance(Json::parse(text)); },
        py::arg("json_text"));

    m.def(
        "conv_at",
        [](const WeightFn& u, const std::string& x, const std::string& trunc) {
            const RationalInterval r = conv_at(u, point(u, x), Truncation::parse(trunc));
            return std::make_pair(r.lo.str(), r.hi.str());
        },
        py::arg("u"), py::arg("x"), py::arg("trunc") = "full");

    m.def(
        "check_b",
        [](const WeightFn& u, const std::string& window, const std::string& trunc, std::optional<std::string> bound,
           unsigned threads) {
            std::optional<BigRational> b;
            if (bound) b = BigRational::parse(*bound);
            const Window w = make_window(u.group(), window);
            const Truncation t = Truncation::parse(trunc);
            Certificate c;
            {
                py::gil_scoped_release release;
                c = check_b(u, w, t, b, threads);
            }
            return cert_py(c);
        },
        py::arg("u"), py::arg("window"), py::arg("trunc") = "N=8", py::arg("bound") = py::none(),
        py::arg("threads") = 0);
    m.def(
        "check_parity_positivity",
        [](const WeightFn& u, const std::string& window) {
            return cert_py(check_parity_positivity(u, make_window(u.group(), window)));
        },
        py::arg("u"), py::arg("window"));
    m.def(
        "check_poly_decay",
        [](const WeightFn& u, const std::string& x, int N) { return cert_py(check_poly_decay(u, point(u, x), N)); },
        py::arg("u"), py::arg("x"), py::arg("N") = 20);
    m.def(
        "check_submultiplicative",
        [](const WeightFn& w, const std::string& window, std::vector<std::pair<std::string, std::string>> pairs,
           bool invariance, std::uint64_t seed) {
            std::vector<std::pair<GroupPoint, GroupPoint>> ps;
            for (const auto& [s, t] : pairs) ps.emplace_back(point(w, s), point(w, t));
            return cert_py(check_submultiplicative(w, make_window(w.group(), window),
                                                   invariance ? SubmultMode::Invariance : SubmultMode::Exact, ps, seed));
        },
        py::arg("w"), py::arg("window"), py::arg("pairs") = std::vector<std::pair<std::string, std::string>>{},
        py::arg("invariance") = false, py::arg("seed") = 1);
    m.def(
        "weight_equivalence",
        [](const WeightFn& a, const WeightFn& b, const std::string& window) {
            return cert_py(weight_equivalence(a, b, make_window(a.group(), window)));
        },
        py::arg("w1"), py::arg("w2"), py::arg("window"));
    m.def(
        "ess_inf_check",
        [](const WeightFn& w, const std::string& window) { return cert_py(ess_inf_check(w, make_window(w.group(), window))); },
        py::arg("w"), py::arg("window"));

    m.def(
        "domar_partial",
        [](const WeightFn& w, const std::string& x, long N) {
            py::list out;
            for (const auto& t : domar_partial(w, point(w, x), N)) {
                if (t.exact_partial) out.append(py::make_tuple(t.n, t.log_plus, t.partial, t.exact_partial->str()));
                else out.append(py::make_tuple(t.n, t.log_plus, t.partial, py::none()));
            }
            return out;
        },
        py::arg("w"), py::arg("x"), py::arg("N"));
    m.def(
        "domar_classify",
        [](const WeightFn& w, const std::string& x, long N) { return cert_py(domar_classify(w, point(w, x), N)); },
        py::arg("w"), py::arg("x"), py::arg("N") = 1000);
    m.def(
        "beurling_integral",
        [](const WeightFn& w, double T) {
            QuadratureSpec s;
            s.T = T;
            return cert_py(beurling_integral(w, s));
        },
        py::arg("w"), py::arg("T") = 1000.0);
    m.def("circle_conv_ratio", [](int grid) {
        return cert_py(circle_conv_ratio(builtin_weight("circle-inv-sqrt"), QuadratureSpec{}, grid).cert);
    }, py::arg("grid") = 20);
    m.def("line_conv_ratio", [](int d) { return cert_py(line_conv_ratio(d).cert); }, py::arg("d") = 1);
    m.def("sigma_constant", [](long M) { return to_py(sigma_subconvolutive_constant(M).to_json()); },
          py::arg("M") = 1000);

    m.def(
        "q_sequence", [](int depth) { return to_py(build_q_sequence(depth).to_json()); }, py::arg("depth") = 2);
    m.def(
        "check_q_fractional_bound",
        [](int depth, int n) { return cert_py(check_q_fractional_bound(build_q_sequence(depth), n)); },
        py::arg("depth"), py::arg("n"));
    m.def(
        "countex_divergence",
        [](int depth) {
            return cert_py(countex_divergence_lower_bound(build_q_sequence(depth), builtin_weight("circle-quarter")));
        },
        py::arg("depth") = 2);

    m.def(
        "run_suite",
        [](int k) {
            const std::vector<SuiteResult (*)()> fns{pruefer_suite,    rationals_suite,        direct_sum_suite,
                                                      domar_suite,      beurling_suite,         countex_suite,
                                                      euclidean_suite, negative_controls_suite, determinism_suite};
            if (k < 1 || k > 9) throw std::invalid_argument("suites are numbered 1..9");
            const SuiteResult r = fns[k - 1]();
            return py::make_tuple(r.pass, r.detail);
        },
        py::arg("criterion"));
    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = run_cli(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
