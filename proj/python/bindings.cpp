#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tkus/bench.hpp"
#include "tkus/miner.hpp"
#include "tkus/oracle.hpp"
#include "tkus/utility_engine.hpp"

namespace py = pybind11;
using namespace tkus;

namespace {

// Patterns cross the boundary in their `{1 3}{2}` text form.
Pattern as_pattern(const py::handle& obj) {
  if (py::isinstance<py::str>(obj)) return parse_pattern(obj.cast<std::string>());
  return obj.cast<Pattern>();
}

py::list as_tuples(const std::vector<PatternUtility>& entries) {
  py::list out;
  for (const auto& e : entries) out.append(py::make_tuple(e.pattern.to_string(), e.utility));
  return out;
}

py::dict as_dict(const MiningStats& s) {
  py::dict d;
  d["candidates"] = s.candidates;
  d["minutil0"] = s.minutil0;
  d["final_minutil"] = s.final_minutil;
  d["wall_time_ms"] = s.wall_time_ms;
  d["peak_memory_bytes"] = s.peak_memory_bytes;
  d["pruned_by_tde"] = s.pruned_by_tde;
  d["pruned_by_eui"] = s.pruned_by_eui;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Top-k high-utility sequential pattern mining over quantitative sequence databases.";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<bench::DivisionByZero>(m, "DivisionByZero", PyExc_ZeroDivisionError);

  py::class_<Pattern>(m, "Pattern")
      .def(py::init([](const std::string& text) { return parse_pattern(text); }), py::arg("text"))
      .def(py::init<std::vector<std::vector<ItemId>>>(), py::arg("itemsets"))
      .def_readonly("itemsets", &Pattern::itemsets)
      .def("__len__", &Pattern::length)
      .def("__str__", &Pattern::to_string)
      .def("__repr__", [](const Pattern& p) { return "Pattern('" + p.to_string() + "')"; })
      .def("__eq__", [](const Pattern& a, const Pattern& b) { return a == b; })
      .def("__lt__", [](const Pattern& a, const Pattern& b) { return a < b; })
      .def("__hash__", [](const Pattern& p) { return py::hash(py::str(p.to_string())); });

  py::class_<Database>(m, "Database")
      .def_static(
          "parse",
          [](const std::string& db_text, const std::string& utable_text) {
            return parse_database(db_text, parse_utility_table(utable_text));
          },
          py::arg("db_text"), py::arg("utable_text"))
      .def_static("load", &load_database, py::arg("db_path"), py::arg("utable_path"))
      .def_static(
          "generate",
          [](std::size_t sequences, std::size_t alphabet, double avg_itemsets, double avg_items,
             Quantity max_quantity, std::uint32_t eu_min, std::uint32_t eu_max, std::uint64_t seed) {
            bench::GenSpec spec;
            spec.num_sequences = sequences;
            spec.alphabet_size = alphabet;
            spec.avg_itemsets_per_sequence = avg_itemsets;
            spec.avg_items_per_itemset = avg_items;
            spec.max_quantity = max_quantity;
            spec.eu_min = eu_min;
            spec.eu_max = eu_max;
            spec.seed = seed;
            return bench::generate(spec);
          },
          py::arg("sequences") = 1000, py::arg("alphabet") = 50, py::arg("avg_itemsets") = 5.0,
          py::arg("avg_items") = 2.0, py::arg("max_quantity") = 5, py::arg("eu_min") = 1,
          py::arg("eu_max") = 10, py::arg("seed") = 1)
      .def("__len__", &Database::size)
      .def_property_readonly("alphabet", &Database::alphabet)
      .def_property_readonly("longest_sequence_length", &Database::longest_sequence_length)
      .def_property_readonly("total_utility", &database_utility)
      .def("serialize", &serialize_database)
      .def("serialize_utilities", [](const Database& db) { return serialize_utility_table(db.utable); });

  m.def(
      "mine",
      [](const Database& db, std::size_t k, bool sur, bool tde, bool eui,
         std::optional<std::size_t> max_length) {
        if (k == 0) throw py::value_error("k must be at least 1");
        MinerConfig config;
        config.k = k;
        config.enable_sur = sur;
        config.enable_tde = tde;
        config.enable_eui = eui;
        config.max_pattern_length = max_length;
        MiningResult result;
        {
          py::gil_scoped_release release;
          result = mine(db, config);
        }
        return py::make_tuple(as_tuples(result.patterns), as_dict(result.stats));
      },
      py::arg("db"), py::arg("k"), py::kw_only(), py::arg("sur") = true, py::arg("tde") = true,
      py::arg("eui") = true, py::arg("max_length") = py::none(),
      "Top-k patterns as (pattern, utility) pairs in result order, plus run statistics.");

  m.def(
      "oracle",
      [](const Database& db, std::size_t k, std::size_t max_length) {
        if (k == 0) throw py::value_error("k must be at least 1");
        return as_tuples(topk_bruteforce(db, k, max_length).entries);
      },
      py::arg("db"), py::arg("k"), py::arg("max_length") = 0,
      "Exhaustive top-k; max_length 0 means the longest sequence length.");

  m.def(
      "initial_threshold",
      [](const Database& db, std::size_t k) { return sur_initialize(db, k).minutil0; },
      py::arg("db"), py::arg("k"));

  m.def(
      "pattern_utility",
      [](const py::object& pattern, const Database& db) {
        return pattern_utility(as_pattern(pattern), db);
      },
      py::arg("pattern"), py::arg("db"));
  m.def(
      "swu", [](const py::object& pattern, const Database& db) { return swu(as_pattern(pattern), db); },
      py::arg("pattern"), py::arg("db"));
  m.def(
      "seu", [](const py::object& pattern, const Database& db) { return seu(as_pattern(pattern), db); },
      py::arg("pattern"), py::arg("db"));

  m.def("sssr", &bench::sssr, py::arg("candidates_a"), py::arg("candidates_b"),
        "Relative reduction in candidates of run B against run A.");
}
