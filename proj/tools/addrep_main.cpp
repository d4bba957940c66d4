// Command-line front end: batch verification pipelines plus file-level
// operations on automata and linear representations.
//
// Exit codes: 0 all checks passed, 1 a check failed, 2 usage / input errors.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "addrep/json_io.hpp"
#include "addrep/pipeline.hpp"

namespace {

int emit_report(const addrep::VerificationReport& rep, const std::string& json_path,
                bool with_timing) {
  if (json_path == "-") {
    std::cout << rep.to_json(with_timing).dump(2) << "\n";
  } else {
    std::cout << rep.to_text();
    if (!json_path.empty()) addrep::save_json_file(json_path, rep.to_json(with_timing));
  }
  return rep.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"additive representation counts and automatic-sequence verification"};
  app.require_subcommand(1);

  std::string json_path;
  bool no_timing = false;
  app.add_option("--json", json_path, "write the JSON report here ('-' for stdout)");
  app.add_flag("--no-timing", no_timing, "omit timing fields from the JSON report");

  // table1
  auto* table1 = app.add_subcommand("table1", "reproduce the embedded table of first values");
  std::uint64_t table1_horizon = 17;
  std::string csv_path;
  table1->add_option("--horizon", table1_horizon, "compute r(3,A,n) for n up to this bound")
      ->required();
  table1->add_option("--csv", csv_path, "export the count table as CSV (header n,count)");

  // pipeline
  auto* pipeline = app.add_subcommand("pipeline", "full automaton pipeline with oracle cross-check");
  std::uint64_t pipeline_horizon = std::uint64_t(1) << 16;
  pipeline->add_option("--horizon", pipeline_horizon,
                       "cross-validation bound for the difference formula");

  // positivity
  auto* positivity = app.add_subcommand("positivity", "check d(n) > 0 via the automaton fast path");
  std::uint64_t upto = 0;
  positivity->add_option("--upto", upto, "check all n up to this bound")->required();

  // identity
  auto* identity = app.add_subcommand("identity", "coefficient-wise series identity check");
  std::uint32_t id_k = 3;
  std::string id_spec;
  std::uint64_t id_horizon = 2000;
  identity->add_option("--k", id_k, "composition arity (k >= 3)")->required();
  identity->add_option("--forbidden", id_spec, "forbidden-set spec (e.g. rule:pow2minus1)")
      ->required();
  identity->add_option("--horizon", id_horizon, "coefficient bound")->required();

  // explore
  auto* explore = app.add_subcommand("explore", "observe growth and monotonicity for a custom set");
  std::uint32_t ex_k = 3;
  std::string ex_spec;
  std::uint64_t ex_horizon = 100000;
  explore->add_option("--k", ex_k, "composition arity (k >= 3)")->required();
  explore->add_option("--forbidden", ex_spec, "forbidden-set spec")->required();
  explore->add_option("--horizon", ex_horizon, "enumeration bound")->required();

  // dfao eval|minimize|iso
  auto* dfao = app.add_subcommand("dfao", "operations on automaton files");
  std::string dfao_mode;
  std::vector<std::string> dfao_files;
  std::uint64_t dfao_n = 0;
  std::string dfao_out;
  dfao->add_option("mode", dfao_mode, "eval | minimize | iso")->required();
  dfao->add_option("files", dfao_files, "automaton JSON file(s)")->required();
  dfao->add_option("--n", dfao_n, "input value for eval");
  dfao->add_option("--out", dfao_out, "output file for minimize");

  // linrep eval|minimize|combine
  auto* linrep = app.add_subcommand("linrep", "operations on linear-representation files");
  std::string lr_mode;
  std::vector<std::string> lr_files;
  std::uint64_t lr_n = 0;
  std::string lr_out;
  std::string lr_ca = "1", lr_cb = "1";
  linrep->add_option("mode", lr_mode, "eval | minimize | combine")->required();
  linrep->add_option("files", lr_files, "representation JSON file(s)")->required();
  linrep->add_option("--n", lr_n, "input value for eval");
  linrep->add_option("--out", lr_out, "output file for minimize/combine");
  linrep->add_option("--ca", lr_ca, "coefficient of the first representation");
  linrep->add_option("--cb", lr_cb, "coefficient of the second representation");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*table1) {
      return emit_report(addrep::cmd_table1(table1_horizon, csv_path), json_path, !no_timing);
    }
    if (*pipeline) {
      return emit_report(addrep::run_pipeline(pipeline_horizon), json_path, !no_timing);
    }
    if (*positivity) {
      return emit_report(addrep::cmd_positivity(upto), json_path, !no_timing);
    }
    if (*identity) {
      auto spec = addrep::parse_set_spec(id_spec);
      return emit_report(addrep::cmd_identity(id_k, spec, id_horizon), json_path, !no_timing);
    }
    if (*explore) {
      auto spec = addrep::parse_set_spec(ex_spec);
      return emit_report(addrep::cmd_explore(ex_k, spec, ex_horizon), json_path, !no_timing);
    }
    if (*dfao) {
      if (dfao_mode == "eval") {
        if (dfao_files.size() != 1) throw addrep::PreconditionError("eval takes one file");
        auto d = addrep::load_dfao_file(dfao_files[0]);
        std::cout << addrep::eval_dfao(d, dfao_n) << "\n";
        return 0;
      }
      if (dfao_mode == "minimize") {
        if (dfao_files.size() != 1) throw addrep::PreconditionError("minimize takes one file");
        auto j = addrep::load_json_file(dfao_files[0]);
        addrep::json out;
        std::uint32_t before = 0, after = 0;
        if (addrep::json_is_dfao(j)) {
          auto d = addrep::dfao_from_json(j);
          auto m = addrep::minimize_dfao(d);
          before = d.num_states;
          after = m.num_states;
          out = addrep::dfao_to_json(m);
        } else {
          auto d = addrep::dfa_from_json(j);
          auto m = addrep::minimize_dfa(d);
          before = d.num_states;
          after = m.num_states;
          out = addrep::dfa_to_json(m);
        }
        std::cerr << "states: " << before << " -> " << after << "\n";
        if (dfao_out.empty())
          std::cout << out.dump(2) << "\n";
        else
          addrep::save_json_file(dfao_out, out);
        return 0;
      }
      if (dfao_mode == "iso") {
        if (dfao_files.size() != 2) throw addrep::PreconditionError("iso takes two files");
        auto load_as_dfao = [](const std::string& path) {
          auto j = addrep::load_json_file(path);
          if (addrep::json_is_dfao(j)) return addrep::dfao_from_json(j);
          auto d = addrep::dfa_from_json(j);
          addrep::Dfao o;
          o.alphabet = d.alphabet;
          o.num_states = d.num_states;
          o.initial = d.initial;
          o.next = d.next;
          o.output.resize(d.num_states);
          for (std::uint32_t q = 0; q < d.num_states; ++q) o.output[q] = d.accepting[q];
          return o;
        };
        bool iso = addrep::isomorphic(load_as_dfao(dfao_files[0]), load_as_dfao(dfao_files[1]));
        std::cout << (iso ? "isomorphic" : "not isomorphic") << "\n";
        return iso ? 0 : 1;
      }
      throw addrep::PreconditionError("unknown dfao mode: " + dfao_mode);
    }
    if (*linrep) {
      if (lr_mode == "eval") {
        if (lr_files.size() != 1) throw addrep::PreconditionError("eval takes one file");
        auto lr = addrep::load_linrep_file(lr_files[0]);
        std::cout << addrep::format_rational(addrep::eval_linrep(lr, lr_n)) << "\n";
        return 0;
      }
      if (lr_mode == "minimize") {
        if (lr_files.size() != 1) throw addrep::PreconditionError("minimize takes one file");
        auto lr = addrep::load_linrep_file(lr_files[0]);
        auto m = addrep::minimize_linrep(lr);
        std::cerr << "rank: " << lr.rank << " -> " << m.rank << "\n";
        if (lr_out.empty())
          std::cout << addrep::linrep_to_json(m).dump(2) << "\n";
        else
          addrep::save_json_file(lr_out, addrep::linrep_to_json(m));
        return 0;
      }
      if (lr_mode == "combine") {
        if (lr_files.size() != 2) throw addrep::PreconditionError("combine takes two files");
        auto a = addrep::load_linrep_file(lr_files[0]);
        auto b = addrep::load_linrep_file(lr_files[1]);
        auto c = addrep::combine(a, b, addrep::parse_rational(lr_ca), addrep::parse_rational(lr_cb));
        if (lr_out.empty())
          std::cout << addrep::linrep_to_json(c).dump(2) << "\n";
        else
          addrep::save_json_file(lr_out, addrep::linrep_to_json(c));
        return 0;
      }
      throw addrep::PreconditionError("unknown linrep mode: " + lr_mode);
    }
  } catch (const addrep::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const addrep::PreconditionError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const addrep::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
