#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gammagen/commands.hpp"
#include "gammagen/cosets.hpp"
#include "gammagen/error.hpp"
#include "gammagen/exactalg.hpp"
#include "gammagen/twists.hpp"
#include "gammagen/words.hpp"

namespace py = pybind11;
using namespace gammagen;

namespace {

// Matrices cross the boundary as "[[a,b],[c,d]]" text; the Python layer converts.
Mat2 mat(const std::string& text) { return parse_mat2(text); }

py::tuple result_tuple(const CommandResult& r) { return py::make_tuple(r.records, r.summary, r.exit_code); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact arithmetic core of gammagen";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def("height", [](const std::string& M, long N) { return height(mat(M), N).get_str(); });
  m.def("gamma_qa", [](long N, long q, long a) { return format_mat2(gamma_qa(N, q, a)); });
  m.def("in_gamma0", [](const std::string& M, long N) { return in_gamma0(mat(M), N); });
  m.def("in_gamma1", [](const std::string& M, long N) { return in_gamma1(mat(M), N); });
  m.def("is_elliptic_infinite", [](const std::string& M) { return is_elliptic_infinite(mat(M)); });

  m.def("index_gamma0", &index_gamma0);
  m.def("index_gamma1", &index_gamma1);
  m.def("index_gamma_q", &index_gamma_q);
  m.def(
      "subgroup_index",
      [](const std::vector<std::string>& gens, std::size_t max_cosets) -> py::object {
        std::vector<Mat2> ms;
        for (const auto& g : gens) ms.push_back(mat(g));
        TCResult r = subgroup_index(ms, TCOptions{max_cosets, TCStrategy::Felsch});
        if (!r.complete()) return py::none();
        return py::int_(r.index);
      },
      py::arg("gens"), py::arg("max_cosets") = 2'000'000);

  m.def(
      "count_words",
      [](long N, std::int64_t bound, int max_length) {
        TWBall ball = enumerate_tw(N, bound, max_length);
        std::size_t n = 0;
        for (std::size_t i = 0; i < ball.size(); ++i) n += ball.within_bound(i);
        return n;
      },
      py::arg("N"), py::arg("height_bound"), py::arg("max_length") = -1);
  m.def("eval_word", [](const std::string& w, long N) { return format_mat2(eval_word(parse_word(w), N)); });
  m.def("loggen_decompose", [](long N, const std::string& M) {
    LogGenFactorization f = loggen_decompose(N, mat(M));
    return py::make_tuple(format_factorization(f), f.gamma_count, format_mat2(eval_factorization(f, N)));
  });

  m.def("ramanujan_c", [](long q, long n) { return py::int_(py::str(ramanujan_c(q, n).get_str())); });
  m.def("c_chi", [](long q, const std::vector<long>& exps, long n) {
    auto chi = exps.empty() ? DirichletCharacter::trivial(q) : DirichletCharacter::from_exponents(q, exps);
    return c_chi(chi, n).to_complex();
  });
  m.def("character_count", [](long q) { return DirichletCharacter::all(q).size(); });
  m.def("orthogonality_check", [](long Q) { return orthogonality_check(Q).ok; });

  m.def("key_det_nonzero", [](long mm, long n, const std::vector<long>& primes,
                              const std::vector<std::vector<std::vector<long>>>& subsets) {
    ExpSumMatrix s{mm, n, primes, subsets};
    return key_det_nonzero(s).nonzero;
  });
  m.def("hall_block_form", [](const std::vector<std::vector<bool>>& a) {
    HallBlock hb = hall_block_form(a);
    return py::make_tuple(hb.m, hb.row_perm, hb.col_perm);
  });

  auto cmd = m.def_submodule("commands", "Command layer: (records, summary, exit_code)");
  cmd.def("gens", [](long N) { return result_tuple(cmd_gens(N)); });
  cmd.def("gens_table", [] { return result_tuple(cmd_gens_table()); });
  cmd.def("identities", [] { return result_tuple(cmd_identities()); });
  cmd.def(
      "verify_hq",
      [](long N, std::int64_t q_from, std::int64_t q_to, bool primes_only, std::int64_t height_bound,
         const std::string& cache) {
        VerifyHqConfig cfg;
        cfg.N = N;
        cfg.q_from = q_from;
        cfg.q_to = q_to;
        cfg.primes_only = primes_only;
        cfg.height_bound = height_bound;
        cfg.witness_cache = cache;
        CommandResult r;
        {
          py::gil_scoped_release release;
          r = cmd_verify_hq(cfg);
        }
        return result_tuple(r);
      },
      py::arg("N"), py::arg("q_from"), py::arg("q_to"), py::arg("primes_only") = false,
      py::arg("height_bound") = 200, py::arg("cache") = "");
  cmd.def(
      "twist_fe",
      [](const std::string& coeffs_json, long q, bool all_characters, long oracle_x) {
        TwistFeOptions o;
        o.coeffs_json = coeffs_json;
        o.modulus = q;
        o.all_characters = all_characters;
        o.oracle_x = oracle_x;
        return result_tuple(cmd_twist_fe(o));
      },
      py::arg("coeffs_json"), py::arg("modulus"), py::arg("all_characters") = false, py::arg("oracle_x") = 0);
  cmd.def("twist_fe_random", [](std::uint64_t seed, int count, long max_modulus, long oracle_x) {
    return result_tuple(cmd_twist_fe_random(seed, count, max_modulus, oracle_x));
  });
  cmd.def("keydet_random", [](std::uint64_t seed, int count) {
    return result_tuple(cmd_keydet_random(seed, count, 4, 13, 6));
  });
  cmd.def("decompose", [](long N, const std::string& M) { return result_tuple(cmd_decompose(N, M)); });
  cmd.def(
      "words",
      [](long N, std::int64_t height, bool below, bool count_only, int max_length) {
        WordsOptions o{N, height, below, count_only, max_length};
        return result_tuple(cmd_words(o));
      },
      py::arg("N"), py::arg("height"), py::arg("below") = false, py::arg("count_only") = true,
      py::arg("max_length") = 14);
}
