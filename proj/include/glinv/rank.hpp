#pragma once

#include <openssl/evp.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "matrix.hpp"

namespace glinv {

struct Block {
  std::vector<int> rows, cols;
};

// Connected components of the row/column incidence graph.
template <class F>
std::vector<Block> blocks(const SparseMatrix<F>& m) {
  int n = m.rows() + m.cols();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<char> used(n, 0);
  for (const auto& [rc, v] : m.entries()) {
    int a = find(rc.first), b = find(m.rows() + rc.second);
    if (a != b) parent[a] = b;
    used[rc.first] = used[m.rows() + rc.second] = 1;
  }
  std::map<int, Block> comp;
  for (int i = 0; i < n; ++i) {
    if (!used[i]) continue;
    Block& b = comp[find(i)];
    if (i < m.rows())
      b.rows.push_back(i);
    else
      b.cols.push_back(i - m.rows());
  }
  std::vector<Block> out;
  for (auto& [root, b] : comp) out.push_back(std::move(b));
  return out;
}

template <class F>
DenseMatrix<F> extract(const SparseMatrix<F>& m, const Block& b) {
  std::vector<int> rpos(m.rows(), -1), cpos(m.cols(), -1);
  for (std::size_t i = 0; i < b.rows.size(); ++i) rpos[b.rows[i]] = static_cast<int>(i);
  for (std::size_t j = 0; j < b.cols.size(); ++j) cpos[b.cols[j]] = static_cast<int>(j);
  DenseMatrix<F> d(static_cast<int>(b.rows.size()), static_cast<int>(b.cols.size()));
  for (const auto& [rc, v] : m.entries())
    if (rpos[rc.first] >= 0 && cpos[rc.second] >= 0) d(rpos[rc.first], cpos[rc.second]) = v;
  return d;
}

// All blocks as dense matrices, in one pass over the entries.
template <class F>
std::vector<DenseMatrix<F>> dense_blocks(const SparseMatrix<F>& m) {
  std::vector<Block> bs = blocks(m);
  std::vector<int> rb(m.rows(), -1), rpos(m.rows(), -1), cpos(m.cols(), -1);
  std::vector<DenseMatrix<F>> out;
  out.reserve(bs.size());
  for (std::size_t b = 0; b < bs.size(); ++b) {
    for (std::size_t i = 0; i < bs[b].rows.size(); ++i) {
      rb[bs[b].rows[i]] = static_cast<int>(b);
      rpos[bs[b].rows[i]] = static_cast<int>(i);
    }
    for (std::size_t j = 0; j < bs[b].cols.size(); ++j) cpos[bs[b].cols[j]] = static_cast<int>(j);
    out.emplace_back(static_cast<int>(bs[b].rows.size()), static_cast<int>(bs[b].cols.size()));
  }
  for (const auto& [rc, v] : m.entries()) out[rb[rc.first]](rpos[rc.first], cpos[rc.second]) = v;
  return out;
}

// Fraction-free elimination on an integer matrix.
inline int bareiss_rank(std::vector<std::vector<Integer>> a) {
  int rows = static_cast<int>(a.size());
  if (rows == 0) return 0;
  int cols = static_cast<int>(a[0].size());
  Integer prev = 1;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i) {
      if (sgn(a[i][c]) != 0 && (p < 0 || abs(a[i][c]) < abs(a[p][c]))) p = i;
    }
    if (p < 0) continue;
    std::swap(a[p], a[r]);
    for (int i = r + 1; i < rows; ++i) {
      for (int j = c + 1; j < cols; ++j) {
        a[i][j] = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

inline std::vector<std::vector<Integer>> integerize(const DenseMatrix<Rational>& d) {
  std::vector<std::vector<Integer>> a(d.rows(), std::vector<Integer>(d.cols()));
  for (int i = 0; i < d.rows(); ++i) {
    Integer l = 1;
    for (int j = 0; j < d.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d(i, j).get_den_mpz_t());
    for (int j = 0; j < d.cols(); ++j) a[i][j] = d(i, j).get_num() * (l / d(i, j).get_den());
  }
  return a;
}

inline int rank_mod_p_dense(const DenseMatrix<Rational>& d, std::uint64_t p) {
  int rows = d.rows(), cols = d.cols();
  std::vector<std::uint64_t> a(static_cast<std::size_t>(rows) * cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const Rational& q = d(i, j);
      std::uint64_t den = mpz_fdiv_ui(q.get_den_mpz_t(), p);
      if (den == 0) throw BadPrime("denominator vanishes mod " + std::to_string(p));
      Zp::Scope s(p);
      a[static_cast<std::size_t>(i) * cols + j] = (Zp::raw(mpz_fdiv_ui(q.get_num_mpz_t(), p)) / Zp::raw(den)).value();
    }
  }
  auto at = [&](int i, int j) -> std::uint64_t& { return a[static_cast<std::size_t>(i) * cols + j]; };
  auto mulmod = [p](std::uint64_t x, std::uint64_t y) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * y) % p);
  };
  auto powmod = [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mulmod(r, b);
      b = mulmod(b, b);
      e >>= 1;
    }
    return r;
  };
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = r;
    while (piv < rows && at(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (int j = 0; j < cols; ++j) std::swap(at(piv, j), at(r, j));
    std::uint64_t inv = powmod(at(r, c), p - 2);
    for (int i = r + 1; i < rows; ++i) {
      if (at(i, c) == 0) continue;
      std::uint64_t f = mulmod(at(i, c), inv);
      for (int j = c; j < cols; ++j) {
        if (at(r, j) == 0) continue;
        std::uint64_t s = mulmod(f, at(r, j));
        at(i, j) = at(i, j) >= s ? at(i, j) - s : at(i, j) + p - s;
      }
    }
    ++r;
  }
  return r;
}

inline int rank_mod_p(const ExactMatrix& m, std::uint64_t p) {
  int total = 0;
  for (const auto& d : dense_blocks(m)) total += rank_mod_p_dense(d, p);
  return total;
}

// Always runs fraction-free elimination on every block.
inline int rank_fraction_free(const ExactMatrix& m) {
  int total = 0;
  for (const auto& d : dense_blocks(m)) total += bareiss_rank(integerize(d));
  return total;
}

inline constexpr std::uint64_t kCertificatePrime = 2305843009213693951ULL;  // 2^61 - 1

// Exact rank over Q. A block whose rank mod p equals min(rows, cols) is
// certified full rank directly; other blocks go through fraction-free
// elimination.
inline int rank_exact(const ExactMatrix& m) {
  int total = 0;
  for (const auto& d : dense_blocks(m)) {
    int full = std::min(d.rows(), d.cols());
    int rp = -1;
    try {
      rp = rank_mod_p_dense(d, kCertificatePrime);
    } catch (const BadPrime&) {
    }
    total += rp == full ? full : bareiss_rank(integerize(d));
  }
  return total;
}

// Rank over an arbitrary exact field (used for Q(z)).
template <class F>
int rank_field(const SparseMatrix<F>& m) {
  int total = 0;
  for (const auto& d : dense_blocks(m)) total += dense_rank(d);
  return total;
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  auto mulmod = [n](std::uint64_t x, std::uint64_t y) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * y) % n);
  };
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = 1, b = a, e = d;
    while (e) {
      if (e & 1) x = mulmod(x, b);
      b = mulmod(b, b);
      e >>= 1;
    }
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int i = 1; i < s && comp; ++i) {
      x = mulmod(x, x);
      if (x == n - 1) comp = false;
    }
    if (comp) return false;
  }
  return true;
}

// Distinct random primes in [2^29, 2^30).
inline std::vector<std::uint64_t> random_primes(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(1ULL << 29, (1ULL << 30) - 1);
  std::vector<std::uint64_t> out;
  while (static_cast<int>(out.size()) < count) {
    std::uint64_t c = dist(rng) | 1ULL;
    if (is_prime_u64(c) && std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  return out;
}

inline std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

inline nlohmann::json to_json(const ExactMatrix& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [rc, v] : m.entries()) entries.push_back({rc.first, rc.second, to_string(v)});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

inline ExactMatrix matrix_from_json(const nlohmann::json& j) {
  ExactMatrix m(j.at("rows").get<int>(), j.at("cols").get<int>());
  for (const auto& e : j.at("entries")) {
    const auto& v = e.at(2);
    m.set(e.at(0).get<int>(), e.at(1).get<int>(), v.is_string() ? parse_rational(v.get<std::string>()) : Rational(v.get<long>()));
  }
  return m;
}

inline std::string digest(const ExactMatrix& m) { return sha256_hex(to_json(m).dump()); }

enum class RankMethod { FractionFree, Modular, Both };

inline std::string to_string(RankMethod m) {
  switch (m) {
    case RankMethod::FractionFree: return "fraction-free";
    case RankMethod::Modular: return "modular";
    case RankMethod::Both: return "both";
  }
  return "?";
}

struct RankEvidence {
  std::string digest;
  std::optional<int> exact_rank;
  std::vector<std::pair<std::uint64_t, int>> modular_ranks;
  RankMethod method = RankMethod::Modular;

  // Best proven lower bound on the rank over Q.
  int rank() const {
    if (exact_rank) return *exact_rank;
    int r = 0;
    for (const auto& [p, rr] : modular_ranks) r = std::max(r, rr);
    return r;
  }
  bool primes_agree() const {
    for (const auto& [p, r] : modular_ranks)
      if (r != modular_ranks.front().second) return false;
    return true;
  }
};

struct RankOptions {
  bool exact = false;
  bool modular = true;
  int primes = 3;
  std::uint64_t seed = 1;
  bool concurrent = false;
  std::string cache_dir;  // evidence cached by matrix digest when set
};

inline RankEvidence rank_evidence_from_json(const nlohmann::json& j);
inline nlohmann::json to_json(const RankEvidence& ev);

inline RankEvidence gather_rank_evidence(const ExactMatrix& m, const RankOptions& opt) {
  RankEvidence ev;
  ev.digest = digest(m);
  std::filesystem::path cacheFile;
  if (!opt.cache_dir.empty()) {
    cacheFile = std::filesystem::path(opt.cache_dir) /
                (ev.digest + "-" + std::to_string(opt.modular ? opt.primes : 0) + "-" + std::to_string(opt.seed) +
                 (opt.exact ? "-exact" : "") + ".json");
    std::ifstream in(cacheFile);
    if (in) {
      try {
        return rank_evidence_from_json(nlohmann::json::parse(in));
      } catch (const std::exception&) {
        // unreadable entry: recompute and overwrite
      }
    }
  }
  if (opt.modular) {
    auto primes = random_primes(opt.primes, opt.seed);
    if (opt.concurrent) {
      std::vector<std::future<int>> fs;
      for (auto p : primes) fs.push_back(std::async(std::launch::async, [&m, p] { return rank_mod_p(m, p); }));
      for (std::size_t i = 0; i < primes.size(); ++i) ev.modular_ranks.push_back({primes[i], fs[i].get()});
    } else {
      for (auto p : primes) ev.modular_ranks.push_back({p, rank_mod_p(m, p)});
    }
  }
  if (opt.exact) ev.exact_rank = rank_exact(m);
  ev.method = opt.exact ? (opt.modular ? RankMethod::Both : RankMethod::FractionFree) : RankMethod::Modular;
  if (!cacheFile.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(cacheFile.parent_path(), ec);
    std::ofstream(cacheFile) << to_json(ev).dump();
  }
  return ev;
}

inline nlohmann::json to_json(const RankEvidence& ev) {
  nlohmann::json j;
  j["digest"] = ev.digest;
  if (ev.exact_rank) j["exact"] = *ev.exact_rank;
  nlohmann::json mod = nlohmann::json::array();
  for (const auto& [p, r] : ev.modular_ranks) mod.push_back({p, r});
  j["modular"] = mod;
  j["method"] = to_string(ev.method);
  return j;
}

inline RankEvidence rank_evidence_from_json(const nlohmann::json& j) {
  RankEvidence ev;
  ev.digest = j.at("digest").get<std::string>();
  if (j.contains("exact")) ev.exact_rank = j.at("exact").get<int>();
  for (const auto& pr : j.at("modular")) ev.modular_ranks.push_back({pr.at(0).get<std::uint64_t>(), pr.at(1).get<int>()});
  std::string m = j.at("method").get<std::string>();
  ev.method = m == "fraction-free" ? RankMethod::FractionFree : m == "both" ? RankMethod::Both : RankMethod::Modular;
  return ev;
}

}  // namespace glinv
