#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "scissors/error.hpp"
#include "scissors/examples.hpp"
#include "scissors/io.hpp"
#include "scissors/k0.hpp"
#include "scissors/sc.hpp"
#include "scissors/snf.hpp"
#include "scissors/validate.hpp"
#include "scissors/waldhausen.hpp"

namespace py = pybind11;
using namespace scissors;

namespace {

using ComplexPtr = std::shared_ptr<const PolytopeComplex>;

py::int_ to_py(const mpz_class& x) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(x.get_str().c_str(), nullptr, 10));
}

mpz_class from_py(const py::handle& x) { return mpz_class(py::str(x).cast<std::string>()); }

py::list to_py(const std::vector<mpz_class>& v) {
  py::list out;
  for (const auto& x : v) out.append(to_py(x));
  return out;
}

py::list to_py(const IntMatrix& m) {
  py::list out;
  for (const auto& row : m) out.append(to_py(row));
  return out;
}

TwObject family(const PolytopeComplex& c, const std::vector<std::string>& names) {
  TwObject a;
  for (const auto& n : names) a.components.push_back(c.at(n));
  return a;
}

std::vector<std::string> names(const PolytopeComplex& c, const TwObject& a) {
  std::vector<std::string> out;
  for (ObjectId x : a.components) out.push_back(c.name(x));
  return out;
}

struct PyMorphism {
  ComplexPtr c;
  ScMorphism m;
};

struct PyK0 {
  ComplexPtr c;
  K0 k;
};

PyMorphism wrap(ComplexPtr c, ScMorphism m) { return PyMorphism{std::move(c), std::move(m)}; }

py::dict kind_dict(const MorphismKind& k) {
  py::dict d;
  d["cofibration"] = k.cofibration;
  d["weak_equivalence"] = k.weak_equivalence;
  d["isomorphism"] = k.isomorphism;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Polytope complexes, the span category SC(C) and its K0";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);
  py::register_exception<BoundExceeded>(m, "BoundExceeded", PyExc_RuntimeError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<PolytopeComplex, std::shared_ptr<PolytopeComplex>>(m, "Complex")
      .def_static("load", [](const std::string& path) { return std::make_shared<PolytopeComplex>(load_complex_file(path)); })
      .def_static("loads", [](const std::string& text) { return std::make_shared<PolytopeComplex>(load_complex(text)); })
      .def("dumps", &dump_complex)
      .def_property_readonly("objects", [](const PolytopeComplex& c) { return c.names; })
      .def_property_readonly("bottom", [](const PolytopeComplex& c) { return c.name(c.bottom); })
      .def_property_readonly("polytopes", [](const PolytopeComplex& c) { return names(c, TwObject{c.polytopes()}); })
      .def_property_readonly("hmors", [](const PolytopeComplex& c) {
        std::vector<std::string> out;
        for (const HMor& h : c.hmors) out.push_back(h.name);
        return out;
      })
      .def("leq", [](const PolytopeComplex& c, const std::string& a, const std::string& b) { return c.leq(c.at(a), c.at(b)); })
      .def("meet", [](const PolytopeComplex& c, const std::string& a, const std::string& b) {
        return c.name(c.meet(c.at(a), c.at(b)));
      })
      .def("is_cover",
           [](const PolytopeComplex& c, const std::string& target, const std::vector<std::string>& fam) {
             return is_cover(c, c.at(target), family(c, fam).components);
           })
      .def("validate",
           [](const PolytopeComplex& c) {
             py::dict out;
             for (const AxiomCheck& a : validate(c).checks) out[py::str(a.axiom)] = py::make_tuple(a.passed, a.witness);
             return out;
           })
      .def("is_valid", [](const PolytopeComplex& c) { return validate(c).ok(); })
      .def("k0", [](std::shared_ptr<PolytopeComplex> c) { return PyK0{c, compute_k0(*c)}; })
      .def("__len__", &PolytopeComplex::size)
      .def("__repr__", [](const PolytopeComplex& c) {
        return "<Complex with " + std::to_string(c.size()) + " objects and " + std::to_string(c.hmors.size()) + " hmors>";
      });

  py::class_<PyK0>(m, "K0")
      .def_property_readonly("rank", [](const PyK0& k) { return k.k.group.rank; })
      .def_property_readonly("invariant_factors", [](const PyK0& k) { return to_py(k.k.group.invariant_factors); })
      .def_property_readonly("group", [](const PyK0& k) { return group_string(k.k.group); })
      .def_property_readonly("generators", [](const PyK0& k) { return names(*k.c, TwObject{k.k.presentation.generators}); })
      .def_property_readonly("relations", [](const PyK0& k) { return to_py(k.k.presentation.relations); })
      .def("class_of", [](const PyK0& k, const std::vector<std::string>& a) { return to_py(class_of(k.k, family(*k.c, a)).coords); })
      .def("equal", [](const PyK0& k, const std::vector<std::string>& a, const std::vector<std::string>& b) {
        return equal_in_k0(k.k, family(*k.c, a), family(*k.c, b));
      })
      .def("__repr__", [](const PyK0& k) { return "<K0 " + group_string(k.k.group) + ">"; });

  py::class_<PolytopeFunctor>(m, "Functor")
      .def_static("load", [](const std::string& path) { return load_functor_file(path); })
      .def_property_readonly("source", [](const PolytopeFunctor& f) { return std::const_pointer_cast<PolytopeComplex>(f.source); })
      .def_property_readonly("target", [](const PolytopeFunctor& f) { return std::const_pointer_cast<PolytopeComplex>(f.target); })
      .def("__call__", [](const PolytopeFunctor& f, const std::string& a) { return f.target->name(f(f.source->at(a))); })
      .def("validate",
           [](const PolytopeFunctor& f) {
             py::dict out;
             for (const AxiomCheck& a : validate_functor(f).checks) out[py::str(a.axiom)] = py::make_tuple(a.passed, a.witness);
             return out;
           })
      .def(
          "induced_k0_map",
          [](const PolytopeFunctor& f, bool canonical) {
            const K0 s = compute_k0(*f.source), t = compute_k0(*f.target);
            return to_py(canonical ? induced_k0_map_canonical(f, s, t) : induced_k0_map(f, s, t));
          },
          py::arg("canonical") = false);

  py::class_<PyMorphism>(m, "Morphism")
      .def_property_readonly("src", [](const PyMorphism& f) { return names(*f.c, f.m.src()); })
      .def_property_readonly("dst", [](const PyMorphism& f) { return names(*f.c, f.m.dst()); })
      .def_property_readonly("apex", [](const PyMorphism& f) { return names(*f.c, f.m.apex()); })
      .def_property_readonly("p_map", [](const PyMorphism& f) { return f.m.p.set_map; })
      .def_property_readonly("sigma_map", [](const PyMorphism& f) { return f.m.sigma.set_map; })
      .def_property_readonly("comps", [](const PyMorphism& f) {
        std::vector<std::string> out;
        for (HMorId h : f.m.sigma.comps) out.push_back(f.c->hmor(h).name);
        return out;
      })
      .def("__eq__", [](const PyMorphism& a, const PyMorphism& b) { return sc_equal(a.m, b.m); })
      .def("__repr__", [](const PyMorphism& f) { return to_string(*f.c, f.m); });

  m.def(
      "make_morphism",
      [](std::shared_ptr<PolytopeComplex> c, const std::vector<std::string>& src, const std::vector<std::string>& dst,
         const std::vector<std::string>& apex, const std::vector<std::size_t>& p_map,
         const std::vector<std::size_t>& sigma_map, const std::vector<std::string>& comps) {
        Shuffle sigma{family(*c, apex), family(*c, dst), sigma_map, {}};
        for (const auto& h : comps) sigma.comps.push_back(c->hmor_at(h));
        return wrap(c, make_sc_morphism(*c, SubMap{family(*c, apex), family(*c, src), p_map}, std::move(sigma)));
      },
      py::arg("complex"), py::arg("src"), py::arg("dst"), py::arg("apex"), py::arg("p_map"), py::arg("sigma_map"),
      py::arg("comps"));
  m.def("identity", [](std::shared_ptr<PolytopeComplex> c, const std::vector<std::string>& a) {
    return wrap(c, sc_identity(*c, family(*c, a)));
  });
  m.def("compose", [](const PyMorphism& f, const PyMorphism& g) { return wrap(f.c, sc_compose(*f.c, f.m, g.m)); },
        "g ∘ f");
  m.def("classify", [](const PyMorphism& f) { return kind_dict(classify(*f.c, f.m)); });
  m.def("pushout", [](const PyMorphism& f, const PyMorphism& cof) {
    const ScPushout po = sc_pushout(*f.c, f.m, cof.m);
    return py::make_tuple(names(*f.c, po.D), wrap(f.c, po.from_c), wrap(f.c, po.from_b));
  });
  m.def("cofiber", [](const PyMorphism& cof) {
    const Cofiber q = cofiber(*cof.c, cof.m);
    return py::make_tuple(names(*cof.c, q.Q), wrap(cof.c, q.quot), wrap(cof.c, q.section));
  });
  m.def(
      "hom",
      [](std::shared_ptr<PolytopeComplex> c, const std::vector<std::string>& a, const std::vector<std::string>& b,
         std::size_t max_apex) {
        std::vector<PyMorphism> out;
        for (auto& f : sc_morphisms(*c, family(*c, a), family(*c, b), max_apex)) out.push_back(wrap(c, std::move(f)));
        return out;
      },
      py::arg("complex"), py::arg("a"), py::arg("b"), py::arg("max_apex"));

  m.def(
      "check_waldhausen",
      [](const PolytopeComplex& c, std::size_t samples, std::uint64_t seed) {
        const WaldhausenReport r = check_waldhausen(c, samples, seed);
        py::dict out;
        for (const PropertyResult& p : r.properties) {
          py::dict d;
          d["applicable"] = p.applicable;
          d["failures"] = p.failures;
          d["counterexamples"] = p.counterexamples;
          out[py::str(p.name)] = d;
        }
        return out;
      },
      py::arg("complex"), py::arg("samples") = 200, py::arg("seed") = 0);

  m.def("smith_normal_form", [](const py::list& rows) {
    IntMatrix mat;
    std::size_t cols = 0;
    for (const auto& row : rows) {
      std::vector<mpz_class> r;
      for (const auto& x : row.cast<py::list>()) r.push_back(from_py(x));
      if (!mat.empty() && r.size() != cols) throw PreconditionError("rows have different lengths");
      cols = r.size();
      mat.push_back(std::move(r));
    }
    const SmithForm s = smith_normal_form(mat, mat.size(), cols);
    return py::make_tuple(to_py(s.U), to_py(s.D), to_py(s.V));
  });

  m.def("sphere", [] { return std::make_shared<PolytopeComplex>(sphere()); });
  m.def(
      "s_g",
      [](const std::string& group) {
        if (group == "S3") return std::make_shared<PolytopeComplex>(s_g(symmetric_group_3()));
        if (group.size() > 1 && group[0] == 'C') return std::make_shared<PolytopeComplex>(s_g(cyclic_group(std::stoul(group.substr(1)))));
        throw PreconditionError("unknown group '" + group + "' (expected Cn or S3)");
      },
      py::arg("group") = "C2");
  m.def("interval", [](std::size_t q, std::size_t M) { return std::make_shared<PolytopeComplex>(interval_line(q, M)); },
        py::arg("q"), py::arg("M"));
  m.def("rationals", [](std::uint64_t N) { return std::make_shared<PolytopeComplex>(rationals(N)); }, py::arg("N"));
  m.def("quadratic", [](std::int64_t d, std::uint64_t N) { return std::make_shared<PolytopeComplex>(quadratic(d, N)); },
        py::arg("d"), py::arg("N"));
  m.def("wedge", [](const std::vector<std::shared_ptr<PolytopeComplex>>& parts) {
    std::vector<PolytopeComplex> cs;
    for (const auto& p : parts) cs.push_back(*p);
    return std::make_shared<PolytopeComplex>(wedge(cs));
  });
  m.def("inclusion_functor", &inclusion_functor, py::arg("d"), py::arg("N"));
}
