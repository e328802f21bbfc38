#pragma once

#include <atomic>
#include <chrono>
#include <functional>
#include <future>
#include <sstream>
#include <string>
#include <vector>

#include "decomp.hpp"
#include "flatten.hpp"

namespace glinv {

// Triangular a x b grids, row a has 5 - a cells (b = 0..4-a).
using Grid = std::vector<std::vector<std::string>>;

namespace golden {

inline const Grid& theorem3_bounds() {
  static const Grid g{{"5", "10", "17", "26", "37"}, {"10", "19", "31", "46"}, {"17", "31", "49"}, {"26", "46"}, {"37"}};
  return g;
}

inline const Grid& theorem3_dims() {
  static const Grid g{{"(3,3)", "(6,8)", "(10,15)", "(15,24)", "(21,35)"},
                      {"(8,6)", "(15,15)", "(24,27)", "(35,42)"},
                      {"(15,10)", "(27,24)", "(42,42)"},
                      {"(24,15)", "(42,35)"},
                      {"(35,21)"}};
  return g;
}

inline const Grid& theorem3_koszul() {
  static const Grid g{{"5", "9", "15", "23", "32"}, {"9", "18", "29", "42"}, {"15", "29", "46"}, {"23", "42"}, {"32"}};
  return g;
}

// k = 6..9: lower and upper border rank bounds for T_k
inline const Grid& skew_bounds() {
  static const Grid g{{"6", "18", "19"}, {"7", "25", "26"}, {"8", "32", "34"}, {"9", "41", "43"}};
  return g;
}

}  // namespace golden

struct Theorem3Cell {
  int a = 0, b = 0;
  long m = 0, n = 0;
  long young_rank = 0, divisor = 0, young_bound = 0;
  long koszul_rank = 0, koszul_bound = 0;
  std::string method;
  double seconds = 0;
};

inline Theorem3Cell theorem3_cell(int a, int b, const RankOptions& base) {
  auto start = std::chrono::steady_clock::now();
  Partition mu{a + b + 1, a}, nu{a + b + 1, a + 1};
  auto t = build_tensor(3, mu, nu);
  RankOptions opt = base;
  if (a + b <= 3) opt.exact = true;
  auto y = young_bound(t, mu, nu, opt);
  auto kz = koszul_bound(t, 1, opt);
  Theorem3Cell c{a, b, t.m, t.n, y.rank.rank(), y.divisor, y.bound, kz.rank.rank(), kz.bound,
                 to_string(y.rank.method), 0};
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return c;
}

// Cells in row-major order; jobs > 1 evaluates them on a pool of async tasks.
inline std::vector<Theorem3Cell> theorem3_grid(const RankOptions& opt, int jobs = 1) {
  std::vector<std::pair<int, int>> cells;
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 4; ++b) cells.push_back({a, b});
  std::vector<Theorem3Cell> out(cells.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) out[i] = theorem3_cell(cells[i].first, cells[i].second, opt);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::future<void>> workers;
  for (int w = 0; w < jobs; ++w)
    workers.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i; (i = next++) < cells.size();) out[i] = theorem3_cell(cells[i].first, cells[i].second, opt);
    }));
  for (auto& w : workers) w.get();
  return out;
}

struct SkewBoundRow {
  int k = 0;
  long koszul_rank = 0, lower = 0, upper = 0;
  bool upper_verified = false;
};

inline SkewBoundRow skew_bound_row(int k, const RankOptions& opt) {
  SkewBoundRow r{k};
  auto c = koszul_bound(build_skew_tensor(k), 1, opt);
  r.koszul_rank = c.rank.rank();
  r.lower = c.bound;
  auto D = skew_upper_decomposition(k);
  r.upper = D.size();
  r.upper_verified = verify_border_decomposition(D, target_tensor<Rational>(D.target)).pass;
  return r;
}

struct TableArtifact {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::string> row_labels;
  Grid cells;
  const Grid* golden = nullptr;
  nlohmann::json details = nlohmann::json::array();

  std::vector<std::string> mismatches() const {
    std::vector<std::string> out;
    if (!golden) return out;
    if (golden->size() != cells.size()) out.push_back("row count differs");
    for (std::size_t r = 0; r < std::min(cells.size(), golden->size()); ++r) {
      const auto& want = (*golden)[r];
      if (want.size() != cells[r].size()) out.push_back("row " + std::to_string(r) + " length differs");
      for (std::size_t c = 0; c < std::min(want.size(), cells[r].size()); ++c)
        if (want[c] != cells[r][c])
          out.push_back("row " + std::to_string(r) + " col " + std::to_string(c) + ": got " + cells[r][c] +
                        ", expected " + want[c]);
    }
    return out;
  }
};

inline TableArtifact theorem3_table(const std::string& name, const RankOptions& opt, int jobs = 1) {
  TableArtifact t;
  t.name = name;
  auto grid = theorem3_grid(opt, jobs);
  t.cells.assign(5, {});
  for (const auto& c : grid) {
    std::string v = name == "theorem3-dims"     ? "(" + std::to_string(c.m) + "," + std::to_string(c.n) + ")"
                    : name == "theorem3-koszul" ? std::to_string(c.koszul_bound)
                                                : std::to_string(c.young_bound);
    t.cells[c.a].push_back(v);
    t.details.push_back({{"a", c.a}, {"b", c.b}, {"m", c.m}, {"n", c.n}, {"young_rank", c.young_rank},
                         {"divisor", c.divisor}, {"young_bound", c.young_bound}, {"koszul_rank", c.koszul_rank},
                         {"koszul_bound", c.koszul_bound}, {"rank_method", c.method}, {"seconds", c.seconds}});
  }
  t.header = {name == "theorem3-dims" ? "(m,n)" : "R(T_{a,b}) >=", "b=0", "1", "2", "3", "4"};
  t.row_labels = {"a=0", "1", "2", "3", "4"};
  t.golden = name == "theorem3-dims"     ? &golden::theorem3_dims()
             : name == "theorem3-koszul" ? &golden::theorem3_koszul()
                                         : &golden::theorem3_bounds();
  return t;
}

inline TableArtifact skew_table(const RankOptions& opt) {
  TableArtifact t;
  t.name = "skew-bounds";
  t.header = {"k", "lower", "upper"};
  for (int k = 6; k <= 9; ++k) {
    auto r = skew_bound_row(k, opt);
    t.cells.push_back({std::to_string(k), std::to_string(r.lower), r.upper_verified ? std::to_string(r.upper) : "?"});
    t.row_labels.push_back("");
    t.details.push_back({{"k", k}, {"koszul_rank", r.koszul_rank}, {"lower", r.lower}, {"upper", r.upper},
                         {"upper_verified", r.upper_verified}});
  }
  t.golden = &golden::skew_bounds();
  return t;
}

inline TableArtifact make_table(const std::string& name, const RankOptions& opt, int jobs = 1) {
  if (name == "skew-bounds") return skew_table(opt);
  if (name == "theorem3-bounds" || name == "theorem3-dims" || name == "theorem3-koszul")
    return theorem3_table(name, opt, jobs);
  throw std::invalid_argument("unknown table: " + name);
}

inline std::string render_table(const TableArtifact& t, const std::string& format) {
  std::ostringstream os;
  const bool labelled = t.name != "skew-bounds";
  if (format == "json") {
    nlohmann::json j{{"schema", "glinv.table/1"}, {"name", t.name}, {"header", t.header}, {"cells", t.cells},
                     {"details", t.details}, {"golden_mismatches", t.mismatches()}};
    if (labelled) j["row_labels"] = t.row_labels;
    return j.dump(2) + "\n";
  }
  if (format == "csv") {
    for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << '"' << t.header[i] << '"';
    os << "\n";
    for (std::size_t r = 0; r < t.cells.size(); ++r) {
      bool first = true;
      if (labelled) {
        os << t.row_labels[r];
        first = false;
      }
      for (const auto& c : t.cells[r]) {
        os << (first ? "" : ",") << '"' << c << '"';
        first = false;
      }
      os << "\n";
    }
    return os.str();
  }
  if (format == "latex") {
    if (t.name == "skew-bounds") {
      os << "\\begin{gather*}\n";
      for (std::size_t r = 0; r < t.cells.size(); ++r)
        os << "  " << t.cells[r][1] << "\\leq\\underline{R}(T_" << t.cells[r][0] << ")\\leq" << t.cells[r][2]
           << (r + 1 < t.cells.size() ? "\\\\\n" : "\\text{.}\n");
      os << "\\end{gather*}\n";
      return os.str();
    }
    std::string corner = t.name == "theorem3-dims" ? "$(m,n)$" : "$\\underline{R}(T_{a,b})\\geq$";
    os << "\\begin{tabular}{c|c c c c c}\n  " << corner << " & $b=0$ & $1$ & $2$ & $3$ & $4$ \\\\\n  \\hline\n";
    for (std::size_t r = 0; r < t.cells.size(); ++r) {
      os << "  $" << (r == 0 ? "a=0" : std::to_string(r)) << "$";
      for (const auto& c : t.cells[r]) os << " & $" << c << "$";
      os << (r + 1 < t.cells.size() ? "\\\\\n" : "\n");
    }
    os << "\\end{tabular}\n";
    return os.str();
  }
  // markdown
  os << "|";
  for (const auto& h : t.header) os << " " << h << " |";
  os << "\n|";
  for (std::size_t i = 0; i < t.header.size(); ++i) os << "---|";
  os << "\n";
  for (std::size_t r = 0; r < t.cells.size(); ++r) {
    os << "|";
    if (labelled) os << " " << t.row_labels[r] << " |";
    for (std::size_t c = 0; c + (labelled ? 1 : 0) < t.header.size(); ++c)
      os << " " << (c < t.cells[r].size() ? t.cells[r][c] : "") << " |";
    os << "\n";
  }
  return os.str();
}

struct ScanInstance {
  Partition mu, nu;
  int k = 0;
  long size = 0;  // m * n
};

// nu in a rows x cols box, mu = nu minus a corner in row j with 1 < j < k;
// k <= 0 means k = length(nu) + 1. Sorted by matrix size.
inline std::vector<ScanInstance> conjecture_instances(int rows, int cols, int k) {
  std::vector<ScanInstance> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int maxPart) -> void {
    if (!cur.empty()) {
      Partition nu(cur);
      int kk = k > 0 ? k : nu.length() + 1;
      if (nu.length() <= kk)
        for (int j = 2; j <= nu.length() && j < kk; ++j) {
          if (j < nu.length() && nu.row(j + 1) == nu.row(j)) continue;
          std::vector<int> m = cur;
          --m[j - 1];
          while (!m.empty() && m.back() == 0) m.pop_back();
          Partition mu(m);
          out.push_back({mu, nu, kk, dim_schur(mu, kk).get_si() * dim_schur(nu, kk).get_si()});
        }
    }
    if (static_cast<int>(cur.size()) == rows) return;
    for (int x = 1; x <= maxPart; ++x) {
      cur.push_back(x);
      self(self, x);
      cur.pop_back();
    }
  };
  rec(rec, cols);
  std::stable_sort(out.begin(), out.end(), [](const ScanInstance& a, const ScanInstance& b) { return a.size < b.size; });
  return out;
}

struct ScanResult {
  ScanInstance instance;
  std::string status;  // "full rank", "rank deficient", "not attempted"
  long rank = 0, expected = 0;
  double seconds = 0;
};

inline std::vector<ScanResult> conjecture_scan(const std::vector<ScanInstance>& instances, double budgetSeconds,
                                               const RankOptions& opt) {
  auto start = std::chrono::steady_clock::now();
  std::vector<ScanResult> out;
  for (const auto& inst : instances) {
    double used = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (used >= budgetSeconds) {
      out.push_back({inst, "not attempted", 0, inst.size, 0});
      continue;
    }
    auto r = verify_conjecture1(inst.mu, inst.nu, inst.k, Conjecture1Method::HighestWeight, opt);
    out.push_back({inst, r.full_rank ? "full rank" : "rank deficient", r.rank, r.expected, r.seconds});
  }
  return out;
}

inline nlohmann::json to_json(const std::vector<ScanResult>& rs) {
  nlohmann::json items = nlohmann::json::array();
  double total = 0;
  int full = 0, skipped = 0;
  for (const auto& r : rs) {
    total += r.seconds;
    full += r.status == "full rank";
    skipped += r.status == "not attempted";
    items.push_back({{"mu", to_string(r.instance.mu)}, {"nu", to_string(r.instance.nu)}, {"k", r.instance.k},
                     {"size", r.instance.size}, {"status", r.status}, {"rank", r.rank}, {"expected", r.expected},
                     {"seconds", r.seconds}});
  }
  return {{"schema", "glinv.scan/1"}, {"instances", items}, {"full_rank", full}, {"not_attempted", skipped},
          {"total", rs.size()}, {"total_seconds", total}};
}

}  // namespace glinv
