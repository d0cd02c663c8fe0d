#include "gwloc/hodge.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>

namespace gwloc {
namespace {

bool stable(int g, std::size_t n) { return 2 * g - 2 + static_cast<long>(n) > 0; }

long dim(int g, std::size_t n) { return 3L * g - 3 + static_cast<long>(n); }

Integer factorial(long k) {
  Integer out = 1;
  for (long i = 2; i <= k; ++i) out *= i;
  return out;
}

// (2k+1)!! with (-1)!! = 1.
Integer odd_double_factorial(long k) {
  Integer out = 1;
  for (long i = 3; i <= 2 * k + 1; i += 2) out *= i;
  return out;
}

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<int> without(const std::vector<int>& v, std::size_t index) {
  std::vector<int> out;
  out.reserve(v.size() - 1);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i != index) out.push_back(v[i]);
  }
  return out;
}

using PsiLookup = std::function<Rational(int, std::vector<int>)>;

// One step of the psi recursion; sub-integrals go through `sub`. `a` sorted.
Rational psi_step(int g, const std::vector<int>& a, const PsiLookup& sub) {
  const std::size_t n = a.size();
  if (!stable(g, n)) return 0;
  if (std::accumulate(a.begin(), a.end(), 0L) != dim(g, n)) return 0;
  if (g == 0 && n == 3) return 1;
  if (g == 1 && n == 1) return Rational(1, 24);

  if (a.front() == 0) {  // string equation
    const std::vector<int> rest = without(a, 0);
    Rational total = 0;
    for (std::size_t j = 0; j < rest.size(); ++j) {
      if (rest[j] == 0) continue;
      std::vector<int> b = rest;
      --b[j];
      total += sub(g, sorted(std::move(b)));
    }
    return total;
  }
  for (std::size_t i = 0; i < n; ++i) {  // dilaton equation
    if (a[i] == 1) return Rational(2 * g - 2 + static_cast<long>(n) - 1) * sub(g, without(a, i));
  }

  // DVV on the largest exponent k+1.
  const int k = a.back() - 1;
  const std::vector<int> d = without(a, n - 1);
  Rational total = 0;
  for (std::size_t j = 0; j < d.size(); ++j) {
    std::vector<int> b = d;
    b[j] += k;
    const Rational c = ratio(odd_double_factorial(k + d[j]), odd_double_factorial(d[j] - 1));
    total += c * sub(g, sorted(std::move(b)));
  }
  Rational loops = 0;
  for (int r = 0; r <= k - 1; ++r) {
    const int s = k - 1 - r;
    const Rational c(odd_double_factorial(r) * odd_double_factorial(s));
    if (g >= 1) {
      std::vector<int> b = d;
      b.push_back(r);
      b.push_back(s);
      loops += c * sub(g - 1, sorted(std::move(b)));
    }
    const std::size_t m = d.size();
    for (int g1 = 0; g1 <= g; ++g1) {
      for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        std::vector<int> left{r}, right{s};
        for (std::size_t i = 0; i < m; ++i) ((mask >> i) & 1 ? left : right).push_back(d[i]);
        if (!stable(g1, left.size()) || !stable(g - g1, right.size())) continue;
        const Rational x = sub(g1, sorted(std::move(left)));
        if (x == 0) continue;
        loops += c * x * sub(g - g1, sorted(std::move(right)));
      }
    }
  }
  total += loops / 2;
  return total / Rational(odd_double_factorial(k + 1));
}

// Polynomials in ch_1, ch_3, ... : sorted index multiset -> coefficient.
using ChPoly = std::map<std::vector<int>, Rational>;

int ch_degree(const std::vector<int>& mono) { return std::accumulate(mono.begin(), mono.end(), 0); }

ChPoly ch_multiply(const ChPoly& a, const ChPoly& b, int max_degree) {
  ChPoly out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      if (ch_degree(ma) + ch_degree(mb) > max_degree) continue;
      std::vector<int> m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      std::sort(m.begin(), m.end());
      Rational& slot = out[m];
      slot += ca * cb;
      if (slot == 0) out.erase(m);
    }
  }
  return out;
}

// lambda_i, i = 0..g, as polynomials in ch of the Hodge bundle:
// c(E) = exp(sum_l (2l-2)! ch_{2l-1}).
const std::vector<ChPoly>& lambda_in_ch(int g) {
  static std::mutex mutex;
  static std::map<int, std::vector<ChPoly>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(g);
  if (it != cache.end()) return it->second;

  ChPoly x;
  for (int c = 1; c <= g; c += 2) x[{c}] = Rational(factorial(c - 1));
  ChPoly total{{{}, Rational(1)}};
  ChPoly power{{{}, Rational(1)}};
  for (int m = 1; m <= g; ++m) {
    power = ch_multiply(power, x, g);
    for (const auto& [mono, c] : power) {
      Rational& slot = total[mono];
      slot += c / Rational(factorial(m));
      if (slot == 0) total.erase(mono);
    }
  }
  std::vector<ChPoly> lambdas(g + 1);
  for (const auto& [mono, c] : total) lambdas[ch_degree(mono)][mono] = c;
  return cache.emplace(g, std::move(lambdas)).first->second;
}

}  // namespace

Rational genus_zero_psi(const std::vector<int>& psi) {
  const long n = static_cast<long>(psi.size());
  if (n < 3) return 0;
  long total = 0;
  Integer den = 1;
  for (int a : psi) {
    if (a < 0) return 0;
    total += a;
    den *= factorial(a);
  }
  if (total != n - 3) return 0;
  return ratio(factorial(n - 3), den);
}

Rational psi_integral_by_recursion(int genus, std::vector<int> psi) {
  std::map<PsiKey, Rational> memo;
  PsiLookup lookup = [&](int g, std::vector<int> a) -> Rational {
    PsiKey key{g, a};
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    Rational value = psi_step(g, a, lookup);
    memo.emplace(std::move(key), value);
    return value;
  };
  return lookup(genus, sorted(std::move(psi)));
}

Rational bernoulli(int k) {
  static std::mutex mutex;
  static std::vector<Rational> table{Rational(1)};
  std::lock_guard lock(mutex);
  while (static_cast<int>(table.size()) <= k) {
    const int m = static_cast<int>(table.size());
    Rational acc = 0;
    Integer binom = 1;  // C(m+1, j)
    for (int j = 0; j < m; ++j) {
      acc += Rational(binom) * table[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    table.push_back(-acc / (m + 1));
  }
  return table[k];
}

HodgeKey make_hodge_key(int genus, std::vector<int> psi, std::vector<int> lambda) {
  if (genus < 0) throw Error(ErrorCode::InvalidArgument, "negative genus");
  if (lambda.size() > static_cast<std::size_t>(genus)) {
    for (std::size_t i = genus; i < lambda.size(); ++i) {
      if (lambda[i] != 0) throw Error(ErrorCode::InvalidArgument, "lambda index exceeds genus");
    }
  }
  lambda.resize(genus, 0);
  for (int x : psi) {
    if (x < 0) throw Error(ErrorCode::InvalidArgument, "negative psi exponent");
  }
  for (int x : lambda) {
    if (x < 0) throw Error(ErrorCode::InvalidArgument, "negative lambda exponent");
  }
  return HodgeKey{genus, sorted(std::move(psi)), std::move(lambda)};
}

template <class Map, class Key>
std::optional<Rational> HodgeEngine::find(const Map& map, const Key& key) const {
  std::shared_lock lock(mutex_);
  auto it = map.find(key);
  if (it == map.end()) return std::nullopt;
  return it->second;
}

template <class Map, class Key>
void HodgeEngine::insert(Map& map, const Key& key, const Rational& value) {
  std::unique_lock lock(mutex_);
  map.emplace(key, value);
}

Rational HodgeEngine::psi_integral(int genus, std::vector<int> psi) {
  if (genus < 0 || !stable(genus, psi.size())) {
    throw Error(ErrorCode::UnstableRange, "psi integral outside the stable range (g=" + std::to_string(genus) +
                                              ", n=" + std::to_string(psi.size()) + ")");
  }
  for (int x : psi) {
    if (x < 0) throw Error(ErrorCode::InvalidArgument, "negative psi exponent");
  }
  return psi_impl(genus, sorted(std::move(psi)));
}

Rational HodgeEngine::psi_impl(int genus, std::vector<int> psi) {
  if (!stable(genus, psi.size())) return 0;
  std::sort(psi.begin(), psi.end());
  if (std::accumulate(psi.begin(), psi.end(), 0L) != dim(genus, psi.size())) return 0;
  if (genus == 0) return genus_zero_psi(psi);
  PsiKey key{genus, std::move(psi)};
  if (auto hit = find(psi_, key)) return *hit;
  const Rational value =
      psi_step(key.genus, key.psi, [this](int g, std::vector<int> a) { return psi_impl(g, std::move(a)); });
  insert(psi_, key, value);
  return value;
}

Rational HodgeEngine::hodge_integral(const HodgeKey& key) {
  if (key.genus < 0 || !stable(key.genus, key.psi.size())) {
    throw Error(ErrorCode::UnstableRange, "Hodge integral outside the stable range");
  }
  const HodgeKey canon = make_hodge_key(key.genus, key.psi, key.lambda);
  long degree = std::accumulate(canon.psi.begin(), canon.psi.end(), 0L);
  bool has_lambda = false;
  for (std::size_t i = 0; i < canon.lambda.size(); ++i) {
    degree += static_cast<long>(i + 1) * canon.lambda[i];
    has_lambda = has_lambda || canon.lambda[i] != 0;
  }
  if (degree != dim(canon.genus, canon.psi.size())) return 0;
  if (!has_lambda) return psi_impl(canon.genus, canon.psi);
  if (auto hit = find(hodge_, canon)) return *hit;

  const int g = canon.genus;
  const auto& lambdas = lambda_in_ch(g);
  ChPoly product{{{}, Rational(1)}};
  for (int i = 1; i <= g; ++i) {
    for (int e = 0; e < canon.lambda[i - 1]; ++e) product = ch_multiply(product, lambdas[i], static_cast<int>(degree));
  }
  Rational value = 0;
  for (const auto& [mono, c] : product) {
    value += c * taut_impl(g, canon.psi, {}, mono);
  }
  insert(hodge_, canon, value);
  return value;
}

Rational HodgeEngine::tautological_integral(int genus, std::vector<int> psi, std::vector<int> kappa,
                                            std::vector<int> ch) {
  if (genus < 0 || !stable(genus, psi.size())) {
    throw Error(ErrorCode::UnstableRange, "integral outside the stable range");
  }
  return taut_impl(genus, sorted(std::move(psi)), sorted(std::move(kappa)), sorted(std::move(ch)));
}

Rational HodgeEngine::taut_impl(int g, std::vector<int> psi, std::vector<int> kappa, std::vector<int> ch) {
  const std::size_t n = psi.size();
  if (!stable(g, n)) return 0;
  const long degree = std::accumulate(psi.begin(), psi.end(), 0L) +
                      std::accumulate(kappa.begin(), kappa.end(), 0L) + std::accumulate(ch.begin(), ch.end(), 0L);
  if (degree != dim(g, n)) return 0;
  if (ch.empty() && kappa.empty()) return psi_impl(g, std::move(psi));
  if (!ch.empty() && g == 0) return 0;
  std::sort(psi.begin(), psi.end());
  std::sort(kappa.begin(), kappa.end());
  std::sort(ch.begin(), ch.end());
  TautKey key{g, psi, kappa, ch};
  if (auto hit = find(taut_, key)) return *hit;

  Rational value = 0;
  if (!ch.empty()) {
    // Mumford: ch_c(E) = B_{c+1}/(c+1)! [kappa_c - sum psi_i^c + 1/2 boundary]
    const int c = ch.back();
    std::vector<int> rest(ch.begin(), ch.end() - 1);
    const Rational factor = bernoulli(c + 1) / Rational(factorial(c + 1));
    if (factor != 0) {
      Rational total = 0;
      {
        std::vector<int> k2 = kappa;
        k2.push_back(c);
        total += taut_impl(g, psi, std::move(k2), rest);
      }
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<int> p2 = psi;
        p2[i] += c;
        total -= taut_impl(g, std::move(p2), kappa, rest);
      }
      Rational boundary = 0;
      for (int j = 0; j <= c - 1; ++j) {
        const int sign = j % 2 == 0 ? 1 : -1;
        Rational part = 0;
        if (g >= 1) {
          std::vector<int> p2 = psi;
          p2.push_back(j);
          p2.push_back(c - 1 - j);
          part += taut_impl(g - 1, std::move(p2), kappa, rest);
        }
        const std::size_t nk = kappa.size();
        const std::size_t nc = rest.size();
        for (int h = 0; h <= g; ++h) {
          for (std::size_t s = 0; s < (std::size_t{1} << n); ++s) {
            std::vector<int> pl{j}, pr{c - 1 - j};
            for (std::size_t i = 0; i < n; ++i) ((s >> i) & 1 ? pl : pr).push_back(psi[i]);
            if (!stable(h, pl.size()) || !stable(g - h, pr.size())) continue;
            for (std::size_t ks = 0; ks < (std::size_t{1} << nk); ++ks) {
              std::vector<int> kl, kr;
              for (std::size_t i = 0; i < nk; ++i) ((ks >> i) & 1 ? kl : kr).push_back(kappa[i]);
              for (std::size_t cs = 0; cs < (std::size_t{1} << nc); ++cs) {
                std::vector<int> cl, cr;
                for (std::size_t i = 0; i < nc; ++i) ((cs >> i) & 1 ? cl : cr).push_back(rest[i]);
                const Rational x = taut_impl(h, pl, kl, cl);
                if (x == 0) continue;
                part += x * taut_impl(g - h, pr, kr, cr);
              }
            }
          }
        }
        boundary += sign * part;
      }
      total += boundary / 2;
      value = factor * total;
    }
  } else {
    // Push the last kappa down to an extra point:
    // kappa_b prod kappa_{b_j} = pi_*(psi_{n+1}^{b+1} prod (kappa_{b_j} - psi_{n+1}^{b_j})).
    const int b = kappa.back();
    const std::vector<int> others(kappa.begin(), kappa.end() - 1);
    const std::size_t m = others.size();
    for (std::size_t t = 0; t < (std::size_t{1} << m); ++t) {
      int exponent = b + 1;
      std::vector<int> keep;
      int sign = 1;
      for (std::size_t i = 0; i < m; ++i) {
        if ((t >> i) & 1) {
          exponent += others[i];
          sign = -sign;
        } else {
          keep.push_back(others[i]);
        }
      }
      std::vector<int> p2 = psi;
      p2.push_back(exponent);
      value += sign * taut_impl(g, std::move(p2), std::move(keep), {});
    }
  }
  insert(taut_, key, value);
  return value;
}

namespace {

std::string join(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

std::string fraction(const Rational& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

[[noreturn]] void corrupt(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::CorruptEntry, "memo line " + std::to_string(line) + ": " + msg);
}

std::vector<int> parse_list(const std::string& text, std::size_t line) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size() || v < 0) corrupt(line, "bad exponent '" + item + "'");
      out.push_back(v);
    } catch (const std::logic_error&) {
      corrupt(line, "bad exponent '" + item + "'");
    }
  }
  if (text.back() == ',') corrupt(line, "trailing comma");
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) return parts;
    start = pos + 1;
  }
}

}  // namespace

void HodgeEngine::save(const std::filesystem::path& path) const {
  std::ostringstream out;
  out << kHeader << '\n';
  {
    std::shared_lock lock(mutex_);
    for (const auto& [k, v] : psi_) out << "P;" << k.genus << ';' << join(k.psi) << '=' << fraction(v) << '\n';
    for (const auto& [k, v] : hodge_) {
      out << "H;" << k.genus << ';' << join(k.psi) << ';' << join(k.lambda) << '=' << fraction(v) << '\n';
    }
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    file << out.str();
    if (!file.flush()) throw Error(ErrorCode::Io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot rename memo file: " + ec.message());
}

void HodgeEngine::load(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::string header;
  if (!std::getline(file, header) || header != kHeader) {
    throw Error(ErrorCode::VersionMismatch, "memo file " + path.string() + " has header '" + header +
                                                "', expected '" + kHeader + "'");
  }
  std::map<PsiKey, Rational> psi;
  std::map<HodgeKey, Rational> hodge;
  std::string text;
  std::size_t line = 1;
  while (std::getline(file, text)) {
    ++line;
    if (text.empty()) continue;
    const std::size_t eq = text.find('=');
    if (eq == std::string::npos) corrupt(line, "missing '='");
    Rational value;
    try {
      value = parse_rational(text.substr(eq + 1));
    } catch (const Error&) {
      corrupt(line, "bad value");
    }
    const auto fields = split(text.substr(0, eq), ';');
    int genus = 0;
    try {
      std::size_t used = 0;
      if (fields.size() < 2) corrupt(line, "too few fields");
      genus = std::stoi(fields[1], &used);
      if (used != fields[1].size() || genus < 0) corrupt(line, "bad genus");
    } catch (const std::logic_error&) {
      corrupt(line, "bad genus");
    }
    if (fields[0] == "P" && fields.size() == 3) {
      auto a = parse_list(fields[2], line);
      if (!stable(genus, a.size())) corrupt(line, "unstable key");
      psi[PsiKey{genus, sorted(std::move(a))}] = value;
    } else if (fields[0] == "H" && fields.size() == 4) {
      auto a = parse_list(fields[2], line);
      auto k = parse_list(fields[3], line);
      if (k.size() != static_cast<std::size_t>(genus)) corrupt(line, "lambda vector length differs from genus");
      if (!stable(genus, a.size())) corrupt(line, "unstable key");
      hodge[HodgeKey{genus, sorted(std::move(a)), std::move(k)}] = value;
    } else {
      corrupt(line, "unknown record");
    }
  }
  std::unique_lock lock(mutex_);
  for (auto& [k, v] : psi) psi_.insert_or_assign(k, v);
  for (auto& [k, v] : hodge) hodge_.insert_or_assign(k, v);
}

std::map<PsiKey, Rational> HodgeEngine::psi_entries() const {
  std::shared_lock lock(mutex_);
  return psi_;
}

std::map<HodgeKey, Rational> HodgeEngine::hodge_entries() const {
  std::shared_lock lock(mutex_);
  return hodge_;
}

std::size_t HodgeEngine::size() const {
  std::shared_lock lock(mutex_);
  return psi_.size() + hodge_.size();
}

std::vector<LambdaTerm> lambda_expand(int genus, const LinearForm& w) {
  std::vector<LambdaTerm> out;
  for (int i = 0; i <= genus; ++i) {
    std::vector<int> k(genus, 0);
    if (i > 0) k[i - 1] = 1;
    LinFrac c = LinFrac::linear_power(w, genus - i);
    if (i % 2) c = -c;
    out.push_back({std::move(k), std::move(c)});
  }
  return out;
}

BracketTerms vertex_bracket_terms(const VertexProblem& p, HodgeEngine& engine) {
  const std::size_t r = p.weights.size();
  if (p.partitions.size() != r) throw Error(ErrorCode::InvalidArgument, "bracket: one partition per weight expected");
  std::size_t ell = 0;
  for (const auto& mu : p.partitions) {
    for (int d : mu) {
      if (d <= 0) throw Error(ErrorCode::InvalidArgument, "bracket: partition parts must be positive");
    }
    ell += mu.size();
  }
  const std::size_t k = p.markings.size();
  for (int a : p.markings) {
    if (a < 0) throw Error(ErrorCode::InvalidArgument, "bracket: negative marking exponent");
  }
  BracketTerms out;
  if (p.genus < 0) throw Error(ErrorCode::InvalidArgument, "bracket: negative genus");

  if (!stable(p.genus, ell + k)) {
    if (ell == 0) throw Error(ErrorCode::InvalidArgument, "bracket: unstable vertex without edges");
    std::size_t dir = 0, part = 0;
    for (std::size_t i = 0; i < r; ++i) {
      if (!p.partitions[i].empty()) {
        dir = i;
        break;
      }
    }
    const int d0 = p.partitions[dir][part];
    std::vector<int> e(r, 0);
    if (ell == 1 && k == 0) {  // w / d
      e[dir] = 1;
      out.laurent[e] = Rational(1, d0);
    } else if (ell == 1 && k == 1) {  // (-w/d)^a
      const int a = p.markings[0];
      e[dir] = a;
      Rational c = 1;
      for (int i = 0; i < a; ++i) c *= Rational(-1, d0);
      out.laurent[e] = c;
    } else {  // two edges: prod_i w_i / (w_a/d_a + w_b/d_b)
      std::vector<std::pair<std::size_t, int>> edges;
      for (std::size_t i = 0; i < r; ++i) {
        for (int d : p.partitions[i]) edges.emplace_back(i, d);
      }
      std::fill(e.begin(), e.end(), 1);
      out.laurent[e] = 1;
      out.divisor = Rational(1, edges[0].second) * p.weights[edges[0].first] +
                    Rational(1, edges[1].second) * p.weights[edges[1].first];
    }
    return out;
  }

  const int g = p.genus;
  const long D = dim(g, ell + k);
  long marking_degree = std::accumulate(p.markings.begin(), p.markings.end(), 0L);
  if (marking_degree > D) return out;

  // Flattened edge points.
  std::vector<std::size_t> point_dir;
  std::vector<int> point_mu;
  for (std::size_t i = 0; i < r; ++i) {
    for (int d : p.partitions[i]) {
      point_dir.push_back(i);
      point_mu.push_back(d);
    }
  }

  // Lambda choice: t_i in [0, g] for each direction, contributing
  // (-1)^{t_i} lambda_{t_i} w_i^{g - t_i}.
  std::vector<int> t(r, 0);
  while (true) {
    long lambda_degree = 0;
    std::vector<int> lambda(g, 0);
    int sign = 1;
    for (std::size_t i = 0; i < r; ++i) {
      lambda_degree += t[i];
      if (t[i] > 0) {
        ++lambda[t[i] - 1];
        if (t[i] % 2) sign = -sign;
      }
    }
    const long budget = D - lambda_degree - marking_degree;
    if (budget >= 0) {
      // Compositions of the psi budget over the edge points.
      std::vector<int> q(ell, 0);
      std::function<void(std::size_t, long)> rec = [&](std::size_t idx, long left) {
        if (idx + 1 == ell) {
          q[idx] = static_cast<int>(left);
        } else if (idx < ell) {
          for (long x = 0; x <= left; ++x) {
            q[idx] = static_cast<int>(x);
            rec(idx + 1, left - x);
          }
          return;
        }
        std::vector<int> psi(q.begin(), q.end());
        psi.insert(psi.end(), p.markings.begin(), p.markings.end());
        const Rational integral = engine.hodge_integral(g, psi, lambda);
        if (integral == 0) return;
        Rational c = sign * integral;
        std::vector<int> e(r);
        for (std::size_t i = 0; i < r; ++i) e[i] = static_cast<int>(ell) - 1 + g - t[i];
        for (std::size_t j = 0; j < ell; ++j) {
          Rational mu_pow = 1;
          for (int x = 0; x <= q[j]; ++x) mu_pow *= point_mu[j];
          c *= mu_pow;
          e[point_dir[j]] -= q[j] + 1;
        }
        Rational& slot = out.laurent[e];
        slot += c;
        if (slot == 0) out.laurent.erase(e);
      };
      if (ell == 0) {
        if (budget == 0) rec(0, 0);
      } else {
        rec(0, budget);
      }
    }
    std::size_t i = 0;
    while (i < r && t[i] == g) t[i++] = 0;
    if (i == r) break;
    ++t[i];
  }
  return out;
}

LinFrac vertex_bracket(const VertexProblem& p, HodgeEngine& engine) {
  const BracketTerms terms = vertex_bracket_terms(p, engine);
  std::size_t nvars = 0;
  for (const auto& w : p.weights) nvars = std::max(nvars, w.nvars());
  std::vector<LinFrac> parts;
  for (const auto& [e, c] : terms.laurent) {
    LinFrac x = LinFrac::constant(nvars, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) x *= LinFrac::linear_power(p.weights[i], e[i]);
    }
    parts.push_back(std::move(x));
  }
  LinFrac total = sum(parts, nvars);
  if (terms.divisor) total *= LinFrac::linear_power(*terms.divisor, -1);
  return total.normalized();
}

}  // namespace gwloc
