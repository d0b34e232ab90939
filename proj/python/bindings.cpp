#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "jcover/cache.hpp"
#include "jcover/cm.hpp"
#include "jcover/errors.hpp"
#include "jcover/fingal.hpp"
#include "jcover/gl2q.hpp"
#include "jcover/halfplane.hpp"
#include "jcover/hecke.hpp"
#include "jcover/jfun.hpp"
#include "jcover/modelcheck.hpp"
#include "jcover/modpoly.hpp"
#include "jcover/verify.hpp"

namespace py = pybind11;
using namespace jcover;

namespace {

// Large integers and rationals cross the boundary as decimal strings.

std::vector<std::vector<std::vector<std::string>>> cosets_py(unsigned long level) {
    std::vector<std::vector<std::vector<std::string>>> out;
    for (const auto& g : gl2q::coset_representatives(level))
        out.push_back({{g.a().get_str(), g.b().get_str()},
                       {g.c().get_str(), g.d().get_str()}});
    return out;
}

std::string normalize_py(const std::string& a, const std::string& b,
                         const std::string& c, const std::string& d) {
    auto g = gl2q::GroupElement::of_rationals(mpq_class(a), mpq_class(b), mpq_class(c),
                                              mpq_class(d));
    return g.to_json();
}

std::string j_eval_py(const std::string& tau_json, long digits) {
    auto tau = halfplane::HalfPlanePoint::from_json(tau_json);
    Complex v = jfun::evaluate_j(tau, digits);
    return v.re().to_decimal(digits) + " " + v.im().to_decimal(digits);
}

std::vector<std::string> j_coefficients_py(std::size_t order) {
    auto s = jfun::j_coefficients(order);
    std::vector<std::string> out;
    for (long n = -1; n <= static_cast<long>(order); ++n)
        out.push_back(s.coeff(n).get_str());
    return out;
}

std::string modpoly_py(unsigned long level, long digits) {
    auto phi = digits > 0 ? modpoly::modular_polynomial(level, digits)
                          : modpoly::modular_polynomial_auto(level);
    return phi.serialize("PHI N " + std::to_string(level));
}

std::string classpoly_py(const std::string& disc, long digits) {
    mpz_class d(disc);
    auto h = digits > 0 ? cm::class_polynomial(d, digits) : cm::class_polynomial_auto(d);
    return h.serialize();
}

std::vector<std::vector<std::string>> reduced_forms_py(const std::string& disc) {
    std::vector<std::vector<std::string>> out;
    for (const auto& f : cm::reduced_forms(mpz_class(disc)))
        out.push_back({f.a.get_str(), f.b.get_str(), f.c.get_str()});
    return out;
}

py::object is_cm_value_py(const std::string& j, unsigned long bound) {
    auto d = cm::is_cm_value(mpq_class(j), bound);
    if (!d) return py::none();
    return py::cast(d->get_str());
}

py::object in_hecke_orbit_py(const std::string& j1, const std::string& j2,
                             unsigned long max_level) {
    auto r = hecke::in_hecke_orbit(hecke::JValue::exact(mpq_class(j1)),
                                   hecke::JValue::exact(mpq_class(j2)), max_level);
    if (r.indeterminate && !r.level) return py::cast(std::string("indeterminate"));
    if (!r.level) return py::none();
    return py::cast(*r.level);
}

unsigned long galois_order_py(unsigned long level, const std::string& flavor) {
    return fingal::group_elements(level, flavor == "pgl" ? fingal::Flavor::pgl
                                                         : fingal::Flavor::psl)
        .size();
}

unsigned long cyclic_subgroup_count_py(unsigned long level) {
    return fingal::cyclic_subgroups(level).size();
}

unsigned long stabilizer_index_py(unsigned long level) {
    auto gs = gl2q::coset_representatives(level);
    gs.insert(gs.begin(), gl2q::GroupElement::identity());
    return gl2q::stabilizer_index(gs);
}

bool verify_quick_py() { return verify::run(true).ok(); }

std::string witness_json_py(unsigned long level) {
    return modelcheck::nonstandard_fiber_witness(level).to_json();
}

bool witness_fails_standard_fibers_py(unsigned long level) {
    return !modelcheck::nonstandard_fiber_witness(level).passes_standard_fibers();
}

} // namespace

PYBIND11_MODULE(_jcover, m) {
    m.doc() = "exact arithmetic around the modular j-function";

    py::register_exception<jcover::precision_error>(m, "PrecisionError");
    py::register_exception<jcover::domain_error>(m, "DomainError");

    m.def("psi", &gl2q::psi, py::arg("n"),
          "psi(N) = N * prod(1 + 1/p) over primes dividing N");
    m.def("coset_representatives", &cosets_py, py::arg("level"),
          "canonical upper-triangular coset representatives as string matrices");
    m.def("normalize", &normalize_py, py::arg("a"), py::arg("b"), py::arg("c"),
          py::arg("d"), "canonical representative of a rational matrix, as JSON");
    m.def("stabilizer_index", &stabilizer_index_py, py::arg("level"),
          "index of the joint stabilizer of the identity plus all level-N cosets");
    m.def("evaluate_j", &j_eval_py, py::arg("tau_json"), py::arg("digits") = 50,
          "j at a point given as JSON ({a,b,D} exact or {re,im,prec}); returns 're im'");
    m.def("j_coefficients", &j_coefficients_py, py::arg("order"),
          "q-expansion coefficients c(-1)..c(order) as decimal strings");
    m.def("modular_polynomial", &modpoly_py, py::arg("level"), py::arg("digits") = 0,
          "sparse text of Phi_N (digits 0 = automatic precision)");
    m.def("class_polynomial", &classpoly_py, py::arg("disc"), py::arg("digits") = 0,
          "sparse text of H_D (digits 0 = automatic precision)");
    m.def("reduced_forms", &reduced_forms_py, py::arg("disc"),
          "reduced primitive forms (a, b, c) of the discriminant");
    m.def("is_cm_value", &is_cm_value_py, py::arg("j"), py::arg("disc_bound") = 200,
          "smallest discriminant whose class polynomial vanishes at j, or None");
    m.def("in_hecke_orbit", &in_hecke_orbit_py, py::arg("j1"), py::arg("j2"),
          py::arg("max_level") = 10,
          "smallest relating level, None, or 'indeterminate'");
    m.def("galois_order", &galois_order_py, py::arg("level"), py::arg("flavor") = "psl",
          "order of PSL2(Z/N) or PGL2(Z/N) by enumeration");
    m.def("cyclic_subgroup_count", &cyclic_subgroup_count_py, py::arg("level"),
          "number of order-N cyclic subgroups of (Z/N)^2");
    m.def("nonstandard_fiber_witness", &witness_json_py, py::arg("level"),
          "JSON of the two-point equal-j distinct-label structure");
    m.def("witness_fails_standard_fibers", &witness_fails_standard_fibers_py,
          py::arg("level"));
    m.def("verify_quick", &verify_quick_py, "run the trimmed invariant suite");

#ifdef VERSION_INFO
#define STR2(x) #x
#define STR(x) STR2(x)
    m.attr("__version__") = STR(VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}
