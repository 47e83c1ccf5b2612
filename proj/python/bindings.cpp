#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "offline_euro/bench.hpp"
#include "offline_euro/scenario.hpp"

namespace py = pybind11;
using namespace offline_euro;

namespace {

template <class Container>
py::bytes to_py(const Container& c) {
  return py::bytes(reinterpret_cast<const char*>(c.data()), c.size());
}

ByteView view(const std::string& s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

template <class T>
T decode_as(const py::bytes& b) {
  return T::from_bytes(view(std::string(b)));
}

template <class T, class Cls>
void add_codec(Cls& cls) {
  cls.def("to_bytes", [](const T& v) { return to_py(v.to_bytes()); })
      .def_static("from_bytes", &decode_as<T>)
      .def("__eq__", [](const T& a, const T& b) { return a == b; })
      .def("__hash__", [](const T& v) { return py::hash(to_py(v.to_bytes())); });
}

template <class T>
py::class_<T> group_class(py::module_& m, const char* name) {
  py::class_<T> cls(m, name);
  add_codec<T>(cls);
  cls.def("pow", &T::pow)
      .def("inverse", &T::inverse)
      .def("__mul__", [](const T& a, const T& b) { return a * b; })
      .def_property_readonly_static("ENCODED_SIZE", [](py::object) { return T::kEncodedSize; });
  return cls;
}

py::dict report_to_dict(const ScenarioReport& r) {
  py::list frames;
  for (const auto& f : r.frames) {
    frames.append(py::make_tuple(f.from, f.to,
                                 std::string(wire::tag_name(static_cast<wire::Tag>(f.tag))),
                                 to_py(f.payload)));
  }
  py::list deposits;
  for (const auto& d : r.deposits) {
    py::dict entry;
    entry["status"] = std::string(deposit_status_name(d.status));
    entry["reason"] = d.reason;
    entry["identity"] = d.identity;
    entry["divergence"] = d.divergence ? py::cast(*d.divergence) : py::none();
    entry["used_ttp"] = d.used_ttp;
    deposits.append(entry);
  }
  py::dict out;
  out["ok"] = r.ok;
  out["lines"] = r.lines;
  out["frames"] = frames;
  out["deposits"] = deposits;
  out["expected_identity"] = r.expected_identity;
  out["revocations"] = r.revocations;
  out["anomalies"] = r.anomalies;
  return out;
}

ScenarioConfig make_config(std::size_t transfers, std::uint64_t seed, const std::string& transport,
                           std::optional<std::size_t> fork_at) {
  ScenarioConfig c;
  c.transfers = transfers;
  c.seed = seed;
  c.transport = parse_transport(transport);
  c.fork_at = fork_at;
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Transferable offline digital euro over BLS12-381";

  py::register_exception<DecodeError>(m, "DecodeError", PyExc_ValueError);
  py::register_exception<ProtocolError>(m, "ProtocolError", PyExc_RuntimeError);

  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("fork", &Rng::fork, py::arg("label"))
      .def("next_u64", &Rng::next_u64);

  py::enum_<HashDomain>(m, "HashDomain")
      .value("WITHDRAW_MESSAGE", HashDomain::kWithdrawMessage)
      .value("THETA_SIGNATURE", HashDomain::kThetaSignature)
      .value("GT_EMBED", HashDomain::kGtEmbed);

  py::class_<Scalar> scalar(m, "Scalar");
  add_codec<Scalar>(scalar);
  scalar.def_static("from_int", &Scalar::from_u64)
      .def_static("random", &Scalar::random)
      .def_static("random_nonzero", &Scalar::random_nonzero)
      .def("inverse", &Scalar::inverse)
      .def("__add__", [](const Scalar& a, const Scalar& b) { return a + b; })
      .def("__sub__", [](const Scalar& a, const Scalar& b) { return a - b; })
      .def("__mul__", [](const Scalar& a, const Scalar& b) { return a * b; })
      .def("__neg__", [](const Scalar& a) { return -a; });

  group_class<G1>(m, "G1")
      .def_static("generator", &G1::generator)
      .def_static("identity", &G1::identity)
      .def_static("random", &G1::random);
  group_class<G2>(m, "G2")
      .def_static("generator", &G2::generator)
      .def_static("identity", &G2::identity)
      .def_static("random", &G2::random);
  group_class<GT>(m, "GT").def_static("identity", &GT::identity);
  m.def("pair", &pair, py::arg("a"), py::arg("b"));

  py::class_<KeyPair>(m, "KeyPair")
      .def_static("generate", &KeyPair::generate, py::arg("rng"))
      .def_static("from_secret", &KeyPair::from_secret, py::arg("secret"))
      .def_readonly("secret", &KeyPair::secret)
      .def_readonly("public_key", &KeyPair::public_key);

  py::class_<Signature> sig(m, "Signature");
  add_codec<Signature>(sig);
  sig.def_readonly("sigma", &Signature::sigma).def_readonly("c", &Signature::c);

  m.def(
      "sign",
      [](const py::bytes& msg, const Scalar& secret, Rng& rng, HashDomain domain) {
        return sign(view(std::string(msg)), secret, rng, domain);
      },
      py::arg("message"), py::arg("secret"), py::arg("rng"),
      py::arg("domain") = HashDomain::kWithdrawMessage);
  m.def(
      "verify",
      [](const py::bytes& msg, const Signature& s, const G1& pk, HashDomain domain) {
        return verify(view(std::string(msg)), s, pk, domain);
      },
      py::arg("message"), py::arg("signature"), py::arg("public_key"),
      py::arg("domain") = HashDomain::kWithdrawMessage);

  py::class_<CommonReferenceString> crs(m, "CommonReferenceString");
  add_codec<CommonReferenceString>(crs);
  crs.def_readonly("g", &CommonReferenceString::g)
      .def_readonly("u", &CommonReferenceString::u)
      .def_readonly("h", &CommonReferenceString::h)
      .def_readonly("v", &CommonReferenceString::v);
  py::class_<Trapdoor>(m, "Trapdoor")
      .def_readonly("alpha", &Trapdoor::alpha)
      .def_readonly("beta", &Trapdoor::beta);
  py::class_<CrsSetup>(m, "CrsSetup")
      .def_readonly("crs", &CrsSetup::crs)
      .def_readonly("trapdoor", &CrsSetup::trapdoor);
  m.def("generate_crs", &generate_crs, py::arg("rng"));
  m.def("extract_committed_g1", &extract_committed_g1, py::arg("c1"), py::arg("c2"),
        py::arg("alpha"));
  m.def("extract_committed_g2", &extract_committed_g2, py::arg("d1"), py::arg("d2"),
        py::arg("beta"));

  py::class_<RandomizationElements> rand(m, "RandomizationElements");
  add_codec<RandomizationElements>(rand);
  py::class_<ReceiverSecret>(m, "ReceiverSecret")
      .def_readonly("t", &ReceiverSecret::t)
      .def_readonly("elements", &ReceiverSecret::elements);
  m.def("derive_randomization", &derive_randomization, py::arg("crs"), py::arg("rng"));

  py::class_<TransactionProof> proof(m, "TransactionProof");
  add_codec<TransactionProof>(proof);
  proof.def_readonly("c1", &TransactionProof::c1)
      .def_readonly("c2", &TransactionProof::c2)
      .def_readonly("d1", &TransactionProof::d1)
      .def_readonly("d2", &TransactionProof::d2)
      .def_readonly("target", &TransactionProof::target)
      .def_property_readonly_static("ENCODED_SIZE",
                                    [](py::object) { return TransactionProof::kEncodedSize; });
  m.def(
      "prove",
      [](const Scalar& x, const Scalar& y, const Scalar& s, const RandomizationElements& r,
         const GT& target, const CommonReferenceString& c, Rng& rng) {
        return prove(x, y, s, r, target, c, rng).proof;
      },
      py::arg("x"), py::arg("y"), py::arg("s"), py::arg("rand"), py::arg("target"),
      py::arg("crs"), py::arg("rng"));
  m.def("verify_proof", &verify_proof, py::arg("proof"), py::arg("crs"));

  py::class_<DigitalEuro> euro(m, "DigitalEuro");
  add_codec<DigitalEuro>(euro);
  euro.def_property_readonly("serial", [](const DigitalEuro& e) { return to_py(e.serial); })
      .def_readonly("theta1_w", &DigitalEuro::theta1_w)
      .def_readonly("bank_sig", &DigitalEuro::bank_sig)
      .def_readonly("proofs", &DigitalEuro::proofs)
      .def("dedup_key", [](const DigitalEuro& e) { return to_py(e.dedup_key()); })
      .def_static("encoded_size", &DigitalEuro::encoded_size, py::arg("proof_count"));
  m.def("predicted_size", [](std::size_t n) { return predicted_size(n); }, py::arg("transfers"));

  m.def(
      "frame_tag_name",
      [](std::uint8_t tag) {
        if (!wire::is_known_tag(tag)) throw py::value_error("unknown tag");
        return std::string(wire::tag_name(static_cast<wire::Tag>(tag)));
      },
      py::arg("tag"));

  m.def(
      "run_honest",
      [](std::size_t transfers, std::uint64_t seed, const std::string& transport) {
        auto config = make_config(transfers, seed, transport, std::nullopt);
        ScenarioReport r;
        {
          py::gil_scoped_release release;
          r = run_honest(config);
        }
        return report_to_dict(r);
      },
      py::arg("transfers") = 50, py::arg("seed") = 1, py::arg("transport") = "inproc");
  m.def(
      "run_double_spend",
      [](std::size_t transfers, std::size_t fork_at, std::uint64_t seed,
         const std::string& transport) {
        auto config = make_config(transfers, seed, transport, fork_at);
        ScenarioReport r;
        {
          py::gil_scoped_release release;
          r = run_double_spend(config);
        }
        return report_to_dict(r);
      },
      py::arg("transfers"), py::arg("fork_at"), py::arg("seed") = 1,
      py::arg("transport") = "inproc");
  m.def(
      "run_duplicate_deposit",
      [](std::size_t transfers, std::uint64_t seed, const std::string& transport) {
        auto config = make_config(transfers, seed, transport, std::nullopt);
        ScenarioReport r;
        {
          py::gil_scoped_release release;
          r = run_duplicate_deposit(config);
        }
        return report_to_dict(r);
      },
      py::arg("transfers"), py::arg("seed") = 1, py::arg("transport") = "inproc");

  m.def(
      "bench_growth",
      [](std::size_t transfers, std::uint64_t seed) {
        std::vector<GrowthRow> rows;
        {
          py::gil_scoped_release release;
          rows = bench_growth(transfers, seed);
        }
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (const auto& r : rows) out.emplace_back(r.index, r.bytes);
        return out;
      },
      py::arg("transfers"), py::arg("seed") = 1,
      "List of (transfer index, serialized euro bytes).");
  m.def(
      "bench_verify",
      [](std::size_t transfers, std::size_t repeats, std::uint64_t seed) {
        std::vector<VerifyRow> rows;
        {
          py::gil_scoped_release release;
          rows = bench_verify(transfers, repeats, seed);
        }
        std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> out;
        for (const auto& r : rows) out.emplace_back(r.index, r.repeat, r.nanoseconds);
        return out;
      },
      py::arg("transfers"), py::arg("repeats") = 1, py::arg("seed") = 1,
      "List of (transfer index, repeat, nanoseconds).");
  m.def(
      "least_squares",
      [](const std::vector<double>& x, const std::vector<double>& y) {
        auto fit = least_squares(x, y);
        return py::make_tuple(fit.slope, fit.intercept, fit.r_squared);
      },
      py::arg("x"), py::arg("y"), "Returns (slope, intercept, r_squared).");
}
