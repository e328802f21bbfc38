#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <glinv/glinv.hpp>

using namespace glinv;

namespace {

enum Exit { kOk = 0, kRefuted = 1, kError = 2 };

struct Globals {
  std::uint64_t seed = 1;
  bool exact = false;
  int jobs = 1;
  int primes = 3;
  std::string format = "md";
  std::string output;

  RankOptions rank() const {
    RankOptions o;
    o.exact = exact;
    o.primes = primes;
    o.seed = seed;
    o.concurrent = jobs > 1;
    if (const char* dir = std::getenv("GLINV_CACHE_DIR")) o.cache_dir = dir;
    return o;
  }
};

void emit(const Globals& g, const std::string& text) {
  if (g.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.output);
  if (!out) throw std::runtime_error("cannot write " + g.output);
  out << text;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

struct TensorArgs {
  int k = 3;
  std::string mu = "2,1", nu = "2,2";
  int skew = 0;

  void add(CLI::App* app) {
    app->add_option("--k", k, "dim V");
    app->add_option("--mu", mu, "partition mu, e.g. 2,1");
    app->add_option("--nu", nu, "partition nu = mu plus one cell");
    app->add_option("--skew", skew, "use the skew-symmetric tensor T_k for this k instead");
  }
  InvariantTensor build() const {
    if (skew > 0) return build_skew_tensor(skew);
    return build_tensor(k, parse_partition(mu), parse_partition(nu));
  }
};

std::optional<CurveDecomposition<Rational>> builtin_rational(const std::string& name) {
  auto suffix = [&](const std::string& prefix) -> std::optional<int> {
    if (name.rfind(prefix, 0) != 0) return std::nullopt;
    return std::stoi(name.substr(prefix.size()));
  };
  if (name == "T3") return t3_decomposition();
  if (name == "T4-conner") return t4_conner_decomposition();
  if (auto k = suffix("skew-diff-")) return skew_difference_decomposition(*k);
  if (auto k = suffix("skew-upper-")) return skew_upper_decomposition(*k);
  return std::nullopt;
}

const char* kBuiltins = "T3, T4-conner, skew-diff-K, skew-upper-K, example3";

template <class F>
int report_verification(const Globals& g, const CurveDecomposition<F>& D, bool exportDecomp) {
  auto rep = verify_border_decomposition(D, target_tensor<F>(D.target));
  nlohmann::json j = to_json(rep);
  if (exportDecomp) j["decomposition"] = to_json(D);
  if (g.format == "json") {
    emit(g, dump(j));
  } else {
    std::ostringstream os;
    os << rep.target << ": " << rep.rank << " terms, t^" << rep.d << " -> " << (rep.pass ? "verified" : "FAILED");
    if (!rep.pass && !rep.message.empty()) os << " (" << rep.message << ")";
    os << "\n";
    if (exportDecomp) os << dump(to_json(D));
    emit(g, os.str());
  }
  return rep.pass ? kOk : kRefuted;
}

std::pair<int, int> parse_box(const std::string& s) {
  auto x = s.find_first_of("xX");
  if (x == std::string::npos) throw CLI::ValidationError("--box", "expected RxC");
  return {std::stoi(s.substr(0, x)), std::stoi(s.substr(x + 1))};
}

std::string candidate_table(const ApolarityReport& rep) {
  std::ostringstream os;
  os << "tensor " << rep.tensor << ", r = " << rep.r << ", mandatory part dim " << rep.mandatory_dim
     << ", kernel of psi on it " << rep.mandatory_kernel << "\n";
  os << "| # | complement | kernel | Borel-fixed |\n|---|---|---|---|\n";
  for (std::size_t i = 0; i < rep.candidates.size(); ++i) {
    const auto& c = rep.candidates[i];
    std::string labels;
    for (const auto& l : c.labels) labels += (labels.empty() ? "" : " ") + l;
    os << "| " << i + 1 << " | " << (labels.empty() ? "(none)" : labels) << " | " << c.kernel_dim << " | "
       << (c.borel_fixed ? "yes" : "NO") << " |\n";
  }
  for (const auto& w : rep.warnings) os << "warning: " << w << "\n";
  if (!rep.note.empty()) os << "note: " << rep.note << "\n";
  os << "verdict: " << (rep.refuted ? "refuted" : "not refuted") << "\n";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"glinv: GL(V)-invariant tensors, flattening bounds, decompositions and apolarity tests"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "seed for all sampling")->capture_default_str();
  app.add_flag("--exact", g.exact, "force fraction-free exact rank");
  app.add_option("--jobs", g.jobs, "worker count")->capture_default_str();
  app.add_option("--primes", g.primes, "number of random primes for modular rank")->capture_default_str();
  app.add_option("--format", g.format, "md, csv, latex or json")
      ->check(CLI::IsMember({"md", "csv", "latex", "json", "text"}))
      ->capture_default_str();
  app.add_option("-o,--output", g.output, "write the artifact to this file");

  int code = kOk;

  // dims
  auto* dims = app.add_subcommand("dims", "dimension of S_lambda C^k");
  int dimsK = 3;
  std::vector<std::string> dimsLambda;
  dims->add_option("--k", dimsK)->required();
  dims->add_option("--lambda", dimsLambda, "one or more partitions")->required();
  dims->callback([&] {
    nlohmann::json j{{"schema", "glinv.dims/1"}, {"k", dimsK}, {"dims", nlohmann::json::object()}};
    std::ostringstream os;
    for (const auto& s : dimsLambda) {
      Partition p = parse_partition(s);
      auto d = dim_schur(p, dimsK);
      j["dims"][to_string(p)] = d.get_str();
      os << "dim S_(" << to_string(p) << ") C^" << dimsK << " = " << d.get_str() << "\n";
    }
    emit(g, g.format == "json" ? dump(j) : os.str());
  });

  // tensor build
  auto* tensor = app.add_subcommand("tensor", "tensor construction");
  tensor->require_subcommand(1);
  auto* tbuild = tensor->add_subcommand("build", "build T in V* (x) S_mu V* (x) S_nu V");
  TensorArgs targs;
  targs.add(tbuild);
  tbuild->callback([&] {
    auto t = targs.build();
    if (g.format == "json") {
      emit(g, dump(to_json(t)));
    } else {
      auto c = conciseness_check(t);
      std::ostringstream os;
      os << "k=" << t.k << " mu=" << to_string(t.mu) << " nu=" << to_string(t.nu) << "  " << t.k << " x " << t.m
         << " x " << t.n << ", " << t.terms.size() << " nonzero terms, flattening ranks " << c.a << "," << c.b << ","
         << c.c << "\n";
      os << format_linear_space(t, g.format == "latex");
      emit(g, os.str());
    }
  });

  // rank-space
  auto* rs = app.add_subcommand("rank-space", "constant-rank check of the space of matrices phi_v");
  TensorArgs rsargs;
  int rsSamples = 20;
  rsargs.add(rs);
  rs->add_option("--samples", rsSamples, "random points besides the basis vectors")->capture_default_str();
  rs->callback([&] {
    auto t = rsargs.build();
    auto rep = constant_rank_check(t, rsSamples, g.seed);
    nlohmann::json viol = nlohmann::json::array();
    for (const auto& s : rep.violations) {
      std::vector<std::string> v;
      for (const auto& x : s.v) v.push_back(to_string(x));
      viol.push_back({{"v", v}, {"rank", s.rank}});
    }
    nlohmann::json j{{"schema", "glinv.rankspace/1"},
                     {"predicted", {{"rank", rep.predicted.rank}, {"ker", rep.predicted.ker}, {"coker", rep.predicted.coker}}},
                     {"samples", rep.samples.size()},
                     {"violations", viol},
                     {"constant", rep.ok()}};
    std::ostringstream os;
    os << "predicted rank " << rep.predicted.rank << ", ker " << rep.predicted.ker << ", coker "
       << rep.predicted.coker << "; " << rep.samples.size() << " points, " << rep.violations.size()
       << " violations\n";
    emit(g, g.format == "json" ? dump(j) : os.str());
    code = rep.ok() ? kOk : kRefuted;
  });

  // flatten koszul | young
  auto* flat = app.add_subcommand("flatten", "build a flattening and compute its rank");
  flat->require_subcommand(1);
  TensorArgs fargs;
  int fp = 1, fh = -1;
  std::string falpha, falphaTilde, fmatrix;
  auto run_flat = [&](const ExactMatrix& M) {
    auto ev = gather_rank_evidence(M, g.rank());
    nlohmann::json j{{"schema", "glinv.flattening/1"}, {"rows", M.rows()}, {"cols", M.cols()}, {"rank", to_json(ev)}};
    if (!fmatrix.empty()) std::ofstream(fmatrix) << to_json(M).dump();
    std::ostringstream os;
    os << M.rows() << " x " << M.cols() << " matrix, rank " << ev.rank() << " (" << to_string(ev.method) << ")\n";
    emit(g, g.format == "json" ? dump(j) : os.str());
  };
  for (const char* name : {"koszul", "young"}) {
    auto* sub = flat->add_subcommand(name, std::string(name) + " flattening");
    fargs.add(sub);
    sub->add_option("--matrix-out", fmatrix, "write the matrix as JSON");
    if (std::string(name) == "koszul") {
      sub->add_option("--p", fp)->capture_default_str();
      sub->add_option("--restrict", fh, "restrict to the span of alpha_1..alpha_h, h = this value");
      sub->callback([&] { run_flat(koszul_matrix(fargs.build(), fp, fh)); });
    } else {
      sub->add_option("--alpha", falpha, "defaults to mu");
      sub->add_option("--alpha-tilde", falphaTilde, "defaults to nu");
      sub->callback([&] {
        auto t = fargs.build();
        run_flat(young_matrix(t, falpha.empty() ? t.mu : parse_partition(falpha),
                              falphaTilde.empty() ? t.nu : parse_partition(falphaTilde)));
      });
    }
  }

  // bound
  auto* bound = app.add_subcommand("bound", "border rank lower bound certificate");
  TensorArgs bargs;
  std::string bmethod = "young", balpha, balphaTilde;
  int bp = 1, bh = -1;
  bargs.add(bound);
  bound->add_option("--method", bmethod)->check(CLI::IsMember({"koszul", "young"}))->capture_default_str();
  bound->add_option("--p", bp)->capture_default_str();
  bound->add_option("--restrict", bh, "restricted Koszul flattening on alpha_1..alpha_h, h = this value");
  bound->add_option("--alpha", balpha);
  bound->add_option("--alpha-tilde", balphaTilde);
  bound->callback([&] {
    auto t = bargs.build();
    BoundCertificate c;
    if (bmethod == "koszul") {
      c = bh > 0 ? restricted_koszul_bound(t, bh, bp, g.rank()) : koszul_bound(t, bp, g.rank());
    } else {
      c = young_bound(t, balpha.empty() ? t.mu : parse_partition(balpha),
                      balphaTilde.empty() ? t.nu : parse_partition(balphaTilde), g.rank());
    }
    if (g.format == "json") {
      emit(g, dump(to_json(c)));
    } else {
      std::ostringstream os;
      os << c.bound << "\n"
         << "rank " << c.rank.rank() << " (" << to_string(c.rank.method) << ") of a " << c.rows << " x " << c.cols
         << " matrix, divisor " << c.divisor << "\n";
      if (c.predicted_rank) os << "predicted rank " << *c.predicted_rank << (c.matches_prediction() ? "" : " MISMATCH") << "\n";
      for (const auto& a : c.assumptions) os << "assumption: " << a << "\n";
      emit(g, os.str());
    }
    code = c.matches_prediction() ? kOk : kRefuted;
  });

  // verify
  auto* verify = app.add_subcommand("verify", "verify a border rank decomposition exactly");
  std::string vfile, vbuiltin;
  bool vexport = false;
  verify->add_option("--file", vfile, "decomposition JSON");
  verify->add_option("--builtin", vbuiltin, std::string("one of ") + kBuiltins);
  verify->add_flag("--export", vexport, "include the decomposition in the output");
  verify->callback([&] {
    if (vfile.empty() == vbuiltin.empty()) throw CLI::ValidationError("verify", "give exactly one of --file, --builtin");
    if (!vfile.empty()) {
      std::ifstream in(vfile);
      if (!in) throw std::runtime_error("cannot read " + vfile);
      auto j = nlohmann::json::parse(in);
      if (j.value("field", "Q") == "Q(z)")
        code = report_verification(g, decomposition_from_json<Cyclo3>(j), vexport);
      else
        code = report_verification(g, decomposition_from_json<Rational>(j), vexport);
      return;
    }
    if (vbuiltin == "example3") {
      code = report_verification(g, example3_decomposition(), vexport);
      return;
    }
    auto D = builtin_rational(vbuiltin);
    if (!D) throw CLI::ValidationError("--builtin", "unknown decomposition " + vbuiltin + "; known: " + kBuiltins);
    code = report_verification(g, *D, vexport);
  });

  // cartan
  auto* cartan = app.add_subcommand("cartan", "rank decomposition of the Cartan product tensor");
  int ck = 2;
  std::string clambda = "1", clambdaPrime = "1";
  bool cexport = false;
  cartan->add_option("--k", ck)->capture_default_str();
  cartan->add_option("--lambda", clambda)->capture_default_str();
  cartan->add_option("--lambda-prime", clambdaPrime)->capture_default_str();
  cartan->add_flag("--export", cexport, "include the decomposition in the output");
  cartan->callback([&] {
    PointSource src;
    src.seed = g.seed;
    auto D = cartan_decomposition(parse_partition(clambda), parse_partition(clambdaPrime), ck, src);
    code = report_verification(g, D, cexport);
  });

  // table
  auto* table = app.add_subcommand("table", "regenerate a table and diff it against the embedded golden copy");
  std::string tname = "theorem3-bounds";
  table->add_option("--name", tname)
      ->check(CLI::IsMember({"theorem3-bounds", "theorem3-dims", "theorem3-koszul", "skew-bounds"}))
      ->capture_default_str();
  table->callback([&] {
    auto t = make_table(tname, g.rank(), g.jobs);
    emit(g, render_table(t, g.format));
    auto bad = t.mismatches();
    for (const auto& m : bad) std::cerr << "golden mismatch: " << m << "\n";
    code = bad.empty() ? kOk : kRefuted;
  });

  // conjecture scan
  auto* conj = app.add_subcommand("conjecture", "full-rank checks of the Young flattening T_{mu,nu}");
  conj->require_subcommand(1);
  auto* scan = conj->add_subcommand("scan", "scan all pairs with nu in a box, smallest matrices first");
  std::string box = "4x4";
  int sk = 0;
  double budget = 3600;
  scan->add_option("--box", box, "rows x columns")->capture_default_str();
  scan->add_option("--k", sk, "dim V; 0 means length(nu)+1")->capture_default_str();
  scan->add_option("--budget-seconds", budget)->capture_default_str();
  scan->callback([&] {
    auto [rows, cols] = parse_box(box);
    RankOptions opt = g.rank();
    auto res = conjecture_scan(conjecture_instances(rows, cols, sk), budget, opt);
    auto j = to_json(res);
    if (g.format == "json") {
      emit(g, dump(j));
    } else {
      std::ostringstream os;
      os << "| mu | nu | k | m*n | status | seconds |\n|---|---|---|---|---|---|\n";
      for (const auto& r : res)
        os << "| " << to_string(r.instance.mu) << " | " << to_string(r.instance.nu) << " | " << r.instance.k << " | "
           << r.instance.size << " | " << r.status << " | " << std::fixed << std::setprecision(3) << r.seconds
           << " |\n";
      os << j["full_rank"].get<int>() << " of " << res.size() << " full rank, " << j["not_attempted"].get<int>()
         << " not attempted, " << j["total_seconds"].get<double>() << " s\n";
      emit(g, os.str());
    }
    bool deficient = std::any_of(res.begin(), res.end(), [](const ScanResult& r) { return r.status == "rank deficient"; });
    code = deficient ? kRefuted : kOk;
  });

  // apolarity
  auto* apol = app.add_subcommand("apolarity", "border apolarity checks");
  apol->require_subcommand(1);
  auto* a210 = apol->add_subcommand("210", "(210) test at border rank r");
  TensorArgs aargs;
  int ar = 9;
  bool strict = false;
  long maxBorderRank = 0;
  aargs.add(a210);
  a210->add_option("--r", ar, "border rank to test")->capture_default_str();
  a210->add_flag("--strict", strict, "treat repeated-weight warnings as errors");
  a210->add_option("--max-border-rank", maxBorderRank,
                   "externally known border rank of a generic tensor in the ambient space (assumption)");
  a210->callback([&] {
    auto t = aargs.build();
    Apolarity210Options opt;
    opt.strict = strict;
    opt.jobs = g.jobs;
    auto rep = run_210_test(t, ar, opt);
    auto j = to_json(rep);
    std::string conclusion;
    if (rep.refuted) {
      conclusion = "border rank >= " + std::to_string(rep.lower_bound());
      if (maxBorderRank > 0 && maxBorderRank == rep.lower_bound()) {
        conclusion = "border rank = " + std::to_string(maxBorderRank);
        j["assumptions"] = {"generic tensors of the ambient space have border rank " + std::to_string(maxBorderRank) +
                            " (external fact, not recomputed)"};
      }
      j["conclusion"] = conclusion;
    }
    if (g.format == "json")
      emit(g, dump(j));
    else
      emit(g, candidate_table(rep) + (conclusion.empty() ? "" : "conclusion: " + conclusion + "\n"));
    code = rep.refuted ? kRefuted : kOk;
  });
  auto* stated = apol->add_subcommand("verify-stated", "check the stated E_111 and E_011 spaces of T_4");
  int statedSamples = 5;
  stated->add_option("--samples", statedSamples, "sampled [s:t] values")->capture_default_str();
  stated->callback([&] {
    auto rep = verify_stated_E111(statedSamples, g.seed);
    if (g.format == "json") {
      emit(g, dump(to_json(rep)));
    } else {
      std::ostringstream os;
      for (const auto& c : rep.checks)
        os << (c.pass ? "pass " : "FAIL ") << c.name << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
      for (const auto& u : rep.untested) os << "untested: " << u << "\n";
      emit(g, os.str());
    }
    code = rep.pass() ? kOk : kRefuted;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Error& e) {
    app.exit(e);
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return code;
}
