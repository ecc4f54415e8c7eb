// mql: command-line front end for the Markoff quad library.
//
// Exit codes: 0 ok, 1 usage/parse error, 2 verification failure,
// 3 budget exhausted, 4 precondition violation.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mql/mql.hpp"

namespace {

using Json = nlohmann::ordered_json;
using mql::Complex;

enum ExitCode { kOk = 0, kUsage = 1, kVerifyFailed = 2, kBudget = 3, kPrecondition = 4 };

Json complex_json(Complex z) {
  if (z.imag() == 0.0) return z.real();
  return Json{{"re", z.real()}, {"im", z.imag()}};
}

Json cells_json(const std::vector<mql::CellId>& cells) {
  Json a = Json::array();
  for (auto c : cells) a.push_back(mql::to_index(c));
  return a;
}

// Display form of a JSON value at 15 significant digits.
std::string display(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return mql::format_real(v.get<double>());
  if (v.is_object() && v.contains("re") && v.contains("im")) {
    return mql::format_complex({v["re"].get<double>(), v["im"].get<double>()});
  }
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + display(v[i]);
    return s;
  }
  return v.dump();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

class Writer {
 public:
  Writer(std::string format, std::string command, std::string input)
      : format_(std::move(format)), command_(std::move(command)), input_(std::move(input)) {}

  // `text` replaces the key=value rendering in text mode.
  void emit(Json fields, std::optional<std::string> text = std::nullopt) {
    Json rec{{"cmd", command_}, {"version", mql::kVersion}, {"input", input_}};
    for (auto& [k, v] : fields.items()) rec[k] = v;
    records_.push_back({std::move(rec), std::move(text)});
  }

  void flush(std::ostream& os) const {
    if (format_ == "json") {
      for (const auto& r : records_) os << r.json.dump() << '\n';
    } else if (format_ == "csv") {
      std::vector<std::string> keys;
      for (const auto& r : records_)
        for (auto& [k, v] : r.json.items())
          if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
      for (std::size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << keys[i];
      os << '\n';
      for (const auto& r : records_) {
        for (std::size_t i = 0; i < keys.size(); ++i) {
          os << (i ? "," : "");
          if (r.json.contains(keys[i])) os << csv_escape(display(r.json[keys[i]]));
        }
        os << '\n';
      }
    } else {
      for (const auto& r : records_) {
        if (r.text) {
          os << *r.text << '\n';
          continue;
        }
        bool first = true;
        for (auto& [k, v] : r.json.items()) {
          if (k == "cmd" || k == "version" || k == "input") continue;
          os << (first ? "" : " ") << k << '=' << display(v);
          first = false;
        }
        os << '\n';
      }
    }
  }

 private:
  struct Record {
    Json json;
    std::optional<std::string> text;
  };
  std::string format_, command_, input_;
  std::vector<Record> records_;
};

struct Globals {
  std::string format = "json";
  std::string out;
  double tol = mql::kDefaultTol;
  bool exact = false;
  unsigned threads = 1;
  std::size_t maxCells = mql::kDefaultMaxCells;
  bool maxCellsSet = false;

  mql::EnumerationOptions enumeration() const {
    mql::EnumerationOptions o;
    o.threads = threads;
    o.maxCells = maxCells;
    if (!maxCellsSet) {
      if (const char* env = std::getenv("MQL_MAX_CELLS")) o.maxCells = std::stoull(env);
    }
    return o;
  }
};

struct QuadArg {
  std::string text;
  mql::ParsedQuad parsed;
};

QuadArg load_quad(const std::string& text, const Globals& g, bool requireValid = true) {
  QuadArg q{text, mql::parse_quad_text(text)};
  if (g.exact && !q.parsed.exact) throw std::invalid_argument("--exact needs nonnegative integer entries");
  if (requireValid) {
    if (q.parsed.exact) mql::integral::require_valid(*q.parsed.exact);
    else mql::require_valid(q.parsed.quad, g.tol);
  }
  return q;
}

Json spectrum_entry_json(const mql::SpectrumEntry& e) {
  return Json{{"kind", mql::to_string(e.kind)},     {"trace", complex_json(e.trace)},
              {"length", complex_json(e.length)},   {"abs_length", std::abs(e.length)},
              {"cells", cells_json(e.cells)},       {"word", mql::format_word(e.word)}};
}

Json mcshane_json(const mql::McShaneReport& r) {
  return Json{{"partial_sum", complex_json(r.partialSum)},
              {"term_count", r.termCount},
              {"product_cutoff", r.productCutoff},
              {"last_shell_max", r.lastShellMax},
              {"verdict", mql::to_string(r.verdict)},
              {"form_disagreement", r.maxFormDisagreement}};
}

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const Complex z = mql::parse_complex(item);
    if (z.imag() != 0.0) throw std::invalid_argument("expected real numbers in '" + text + "'");
    out.push_back(z.real());
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Markoff quad toolkit: flips, spectra, McShane sums, integral quads"};
  app.set_version_flag("--version", std::string(mql::kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--format", g.format, "Output format (JSON Lines by default)")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--out", g.out, "Write output to FILE instead of stdout");
  app.add_option("--tol", g.tol, "Relative tolerance for the quad relation")->check(CLI::PositiveNumber);
  app.add_flag("--exact", g.exact, "Force exact integer arithmetic");
  app.add_option("--threads", g.threads, "Worker threads for tree enumeration")->check(CLI::Range(1u, 64u));
  auto* maxCellsOpt = app.add_option("--max-cells", g.maxCells, "Cell budget (env MQL_MAX_CELLS)");

  std::string quadText, word, toCoords, fromCoords, seedText, bText = "36";
  int flipIndex = 0;
  double L = 0.0, k = 4.0, cutoff = 0.0, targetTol = 1e-3, lmin = 10.0, lmax = 34.0, A = 3.0;
  std::size_t budget = 1'000'000, shells = 8, nTerms = 10;
  bool twoSided = false;

  auto* verify = app.add_subcommand("verify", "Relation residual; exit 2 when above --tol");
  verify->add_option("quad", quadText, "Quad a,b,c,d (entries x, x+yi or integers)")->required();

  auto* flip = app.add_subcommand("flip", "Flip one entry");
  flip->add_option("quad", quadText)->required();
  flip->add_option("-i,--index", flipIndex, "Entry to flip, 1..4")->required()->check(CLI::Range(1, 4));

  auto* reduce = app.add_subcommand("reduce", "Reduce to the sink (integers: to the fundamental root)");
  reduce->add_option("quad", quadText)->required();

  auto* spectrum = app.add_subcommand("spectrum", "Simple length spectrum below L, one record per curve");
  spectrum->add_option("quad", quadText)->required();
  spectrum->add_option("-L", L, "Length bound")->required();
  spectrum->add_flag("--two-sided", twoSided, "Two-sided curves instead of one-sided");

  auto* sys = app.add_subcommand("systole", "Shortest simple closed geodesic");
  sys->add_option("quad", quadText)->required();

  auto* mcshane = app.add_subcommand("mcshane", "McShane partial sum or convergence check");
  mcshane->add_option("quad", quadText)->required();
  auto* cutoffOpt = mcshane->add_option("--cutoff", cutoff, "Sum faces with |ab| <= X");
  mcshane->add_option("--target-tol", targetTol, "Target |sum - 1/2| (default 1e-3)")->excludes(cutoffOpt);
  mcshane->add_option("--budget", budget, "Maximum number of faces");

  auto* bq = app.add_subcommand("bq-check", "Faces with |ab| <= max(k,4) and [0,4] violations");
  bq->add_option("quad", quadText)->required();
  bq->add_option("-k", k, "Product cutoff");

  auto* fundamental = app.add_subcommand("fundamental", "Reduced positive integer quads");

  auto* enumInt = app.add_subcommand("enumerate-integral", "Positive integer quads with max entry <= B");
  enumInt->add_option("-B", bText, "Entry bound (integer)")->required();

  auto* growth = app.add_subcommand("growth", "Fit s(L) ~ L^m on geometric shells");
  growth->add_option("quad", quadText)->required();
  growth->add_option("--lmin", lmin);
  growth->add_option("--lmax", lmax);
  growth->add_option("--shells", shells);

  auto* coords = app.add_subcommand("coords", "Lambda or horocyclic coordinates, and their inverses");
  coords->add_option("values", quadText, "Quad, or coordinates with --from")->required();
  auto* toOpt = coords->add_option("--to", toCoords)->check(CLI::IsMember({"lambda", "horocyclic"}));
  coords->add_option("--from", fromCoords)->check(CLI::IsMember({"lambda", "horocyclic"}))->excludes(toOpt);

  auto* mcg = app.add_subcommand("mcg", "Apply a mapping class word (letters act right to left)");
  mcg->add_option("quad", quadText)->required();
  mcg->add_option("-w,--word", word, "Letters f1..f4, p1..p3, g, h")->required();

  auto* klein = app.add_subcommand("klein", "One-sided sequence of a once-punctured Klein bottle");
  klein->add_option("-A", A, "Two-sided trace");
  klein->add_option("--seed", seedText, "a0,a1")->required();
  klein->add_option("-n", nTerms, "Number of terms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  g.maxCellsSet = maxCellsOpt->count() > 0;

  CLI::App* cmd = app.get_subcommands().front();
  std::string inputText = quadText;
  if (cmd == enumInt) inputText = "B=" + bText;
  if (cmd == klein) inputText = "A=" + mql::format_real(A) + ";seed=" + seedText;
  Writer out(g.format, cmd->get_name(), inputText);
  int code = kOk;

  try {
    const auto opts = g.enumeration();
    if (cmd == verify) {
      auto q = mql::parse_quad_text(quadText);
      if (g.exact && !q.exact) throw std::invalid_argument("--exact needs nonnegative integer entries");
      if (q.exact) {
        const bool ok = mql::integral::is_valid(*q.exact);
        out.emit({{"residual", ok ? 0.0 : 1.0}, {"valid", ok}, {"exact", true}});
        if (!ok) code = kVerifyFailed;
      } else {
        const double r = mql::verify_quad(q.quad);
        out.emit({{"residual", r}, {"valid", r <= g.tol}, {"exact", false}});
        if (!(r <= g.tol)) code = kVerifyFailed;
      }
    } else if (cmd == flip) {
      const auto q = load_quad(quadText, g);
      std::string s = q.parsed.exact ? mql::integral::to_string(mql::integral::int_flip(*q.parsed.exact, flipIndex - 1))
                                     : mql::format_quad(mql::flip(q.parsed.quad, flipIndex - 1), 17);
      out.emit({{"index", flipIndex}, {"quad", s}}, s);
    } else if (cmd == reduce) {
      const auto q = load_quad(quadText, g);
      if (q.parsed.exact && mql::integral::is_positive(*q.parsed.exact)) {
        const auto c = mql::integral::classify(*q.parsed.exact);
        out.emit({{"quad", mql::integral::to_string(c.root)}, {"word", mql::format_word(c.word)}, {"exact", true}});
      } else {
        const auto r = mql::reduce_to_sink(q.parsed.quad, mql::kDefaultMaxSteps, g.tol);
        out.emit({{"quad", mql::format_quad(r.sink, 17)},
                  {"word", mql::format_word(r.word)},
                  {"kind", mql::to_string(mql::classify_vertex(r.sink, g.tol).kind)},
                  {"exact", false}});
      }
    } else if (cmd == spectrum) {
      const auto q = load_quad(quadText, g);
      const auto entries = twoSided ? mql::two_sided_spectrum(q.parsed.quad, L, opts)
                                    : mql::one_sided_spectrum(q.parsed.quad, L, opts);
      for (const auto& e : entries) out.emit(spectrum_entry_json(e));
    } else if (cmd == sys) {
      const auto q = load_quad(quadText, g);
      const auto s = mql::systole(q.parsed.quad, opts);
      out.emit(spectrum_entry_json(s.witness));
    } else if (cmd == mcshane) {
      const auto q = load_quad(quadText, g);
      mql::McShaneOptions mo;
      mo.maxFaces = budget;
      mo.enumeration = opts;
      if (cutoffOpt->count() > 0) {
        const auto r = mql::mcshane_partial(q.parsed.quad, cutoff, mo);
        out.emit(mcshane_json(r));
        if (r.verdict == mql::McShaneVerdict::BudgetExceeded) code = kBudget;
      } else {
        const auto v = mql::mcshane_verify(q.parsed.quad, targetTol, mql::default_cutoff_schedule(), mo);
        Json j = mcshane_json(v.report);
        j["target_tol"] = targetTol;
        j["pass"] = v.pass;
        out.emit(j);
        if (v.report.verdict == mql::McShaneVerdict::BudgetExceeded) code = kBudget;
        else if (!v.pass) code = kVerifyFailed;
      }
    } else if (cmd == bq) {
      const auto q = load_quad(quadText, g);
      const auto r = mql::check_bq(q.parsed.quad, k, opts, g.tol);
      Json small = Json::array();
      for (const auto& f : r.faces4) {
        small.push_back(Json{{"cells", {mql::to_index(f.cells[0]), mql::to_index(f.cells[1])}},
                             {"ab", complex_json(f.product())}});
      }
      out.emit({{"cutoff", r.cutoff},
                {"faces", r.faces.size()},
                {"faces4", small},
                {"violations", r.violations.size()},
                {"cells_below_2", r.cellsBelow2},
                {"budget_hit", r.budgetHit},
                {"passed", r.passed()}});
      if (r.budgetHit) code = kBudget;
      else if (!r.violations.empty()) code = kVerifyFailed;
    } else if (cmd == fundamental) {
      for (const auto& f : mql::integral::fundamental_quads()) {
        const std::string s = mql::integral::to_string(f);
        out.emit({{"quad", s}}, "(" + s + ")");
      }
    } else if (cmd == enumInt) {
      if (bText.empty() || bText.find_first_not_of("0123456789") != std::string::npos) {
        throw std::invalid_argument("-B needs a nonnegative integer");
      }
      for (const auto& q : mql::integral::enumerate_integral_below(mql::integral::BigInt(bText))) {
        const std::string s = mql::integral::to_string(q);
        out.emit({{"quad", s}}, s);
      }
    } else if (cmd == growth) {
      const auto q = load_quad(quadText, g);
      const auto fit = mql::growth_exponent(q.parsed.quad, lmin, lmax, shells, opts);
      Json samples = Json::array();
      for (const auto& [Ls, n] : fit.samples) samples.push_back({Ls, n});
      out.emit({{"exponent", fit.exponent},
                {"intercept_log_eta", fit.interceptLogEta},
                {"fit_residual", fit.fitResidual},
                {"samples", samples}});
    } else if (cmd == coords) {
      if (!fromCoords.empty()) {
        const auto v = parse_reals(quadText);
        mql::MarkoffQuad q;
        if (fromCoords == "lambda") {
          if (v.size() != 6) throw std::invalid_argument("lambda coordinates need six values");
          q = mql::lambda_to_quad({{v[0], v[1], v[2]}, {v[3], v[4], v[5]}});
        } else {
          if (v.size() != 4) throw std::invalid_argument("horocyclic coordinates need four values");
          q = mql::horocyclic_to_quad({{v[0], v[1], v[2], v[3]}}, g.tol);
        }
        out.emit({{"quad", mql::format_quad(q, 17)}, {"residual", mql::verify_quad(q)}});
      } else {
        const auto q = load_quad(quadText, g);
        if (toCoords == "lambda") {
          const auto x = mql::quad_to_lambda(q.parsed.quad, g.tol);
          out.emit({{"lambda", x.lambda}, {"mu", x.mu}, {"simplex_residual", mql::simplex_residuals(x)}});
        } else {
          const auto H = mql::quad_to_horocyclic(q.parsed.quad, g.tol);
          const auto t = mql::in_fundamental_domain(H, g.tol);
          out.emit({{"horocyclic", H.h}, {"in_fundamental_domain", t.inside}, {"walls", t.walls}});
        }
      }
    } else if (cmd == mcg) {
      const auto q = load_quad(quadText, g);
      const auto w = mql::parse_mcg_word(word);
      const std::string s = q.parsed.exact ? mql::integral::to_string(mql::mcg_apply(w, *q.parsed.exact))
                                           : mql::format_quad(mql::mcg_apply(w, q.parsed.quad), 17);
      out.emit({{"word", mql::to_string(w)}, {"quad", s}}, s);
    } else if (cmd == klein) {
      const auto seed = parse_reals(seedText);
      if (seed.size() != 2) throw std::invalid_argument("--seed needs a0,a1");
      const auto seq = mql::klein_sequence(A, seed[0], seed[1], nTerms, g.tol);
      Json terms = Json::array();
      for (const auto& t : seq.terms) terms.push_back(complex_json(t));
      out.emit({{"A", A},
                {"terms", terms},
                {"lambda_plus", complex_json(seq.lambdaPlus)},
                {"lambda_minus", complex_json(seq.lambdaMinus)}});
    }
  } catch (const mql::InvalidQuad& e) {
    std::cerr << "mql: invalid input: " << e.what() << '\n';
    return kVerifyFailed;
  } catch (const mql::BudgetExceeded& e) {
    std::cerr << "mql: budget exhausted: " << e.what() << '\n';
    return kBudget;
  } catch (const mql::PreconditionViolation& e) {
    std::cerr << "mql: precondition violated: " << e.what() << '\n';
    return kPrecondition;
  } catch (const std::invalid_argument& e) {
    std::cerr << "mql: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "mql: " << e.what() << '\n';
    return kUsage;
  }

  if (g.out.empty()) {
    out.flush(std::cout);
  } else {
    std::ofstream f(g.out);
    if (!f) {
      std::cerr << "mql: cannot open " << g.out << '\n';
      return kUsage;
    }
    out.flush(f);
  }
  return code;
}
