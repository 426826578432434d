#include "qnerve/nerve.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "qnerve/errors.hpp"

namespace qnerve {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

unsigned __int128 encode(std::span<const VertexId> verts, std::size_t base) {
  unsigned __int128 key = 0;
  for (auto it = verts.rbegin(); it != verts.rend(); ++it) key = key * base + *it;
  return key;
}

// Dense table of distances already mapped into the power domain.
std::vector<double> power_table(const VGraph& x, PExponent p) {
  const std::size_t n = x.size();
  std::vector<double> pw(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) pw[a * n + b] = to_power_domain(x(a, b), p);
  return pw;
}

// Chain DP state for one tuple prefix: best[j] is the heaviest forward chain
// from x_0 to x_j (sum of p-th powers, or max for p = inf).
double extend_best(std::span<const double> pw, std::size_t n, std::span<const VertexId> prefix,
                   std::span<const double> best, VertexId v, bool max_fold) {
  double out = max_fold ? 0.0 : -kInf;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    const double d = pw[prefix[i] * n + v];
    if (std::isinf(d)) return kInf;
    out = max_fold ? std::max(out, std::max(best[i], d)) : std::max(out, best[i] + d);
  }
  return out;
}

struct RawTuples {
  std::vector<std::vector<VertexId>> verts;  // per degree, flattened
  std::vector<std::vector<double>> power;    // per degree, birth in the power domain
};

}  // namespace

bool is_degenerate(std::span<const VertexId> verts) {
  for (std::size_t i = 0; i + 1 < verts.size(); ++i)
    if (verts[i] == verts[i + 1]) return true;
  return false;
}

ExtScalar membership_scale(const VGraph& x, std::span<const VertexId> verts, PExponent p) {
  if (verts.empty()) throw InputError("membership_scale needs a nonempty tuple");
  for (auto v : verts)
    if (v >= x.size()) throw InputError("tuple vertex index " + std::to_string(v) + " out of range");
  const std::size_t m = verts.size();
  if (p.is_inf()) {
    ExtScalar s = ExtScalar::zero();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) s = std::max(s, x(verts[i], verts[j]));
    return s;
  }
  std::vector<double> best(m, -kInf);
  best[0] = 0.0;
  for (std::size_t j = 1; j < m; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      const ExtScalar d = x(verts[i], verts[j]);
      if (d.is_inf()) return ExtScalar::infinity();
      best[j] = std::max(best[j], best[i] + to_power_domain(d, p));
    }
  return from_power_domain(best[m - 1], p);
}

ExtScalar membership_scale(const VGraph& x, const std::vector<std::string>& verts, PExponent p) {
  std::vector<VertexId> ids;
  ids.reserve(verts.size());
  for (const auto& v : verts) ids.push_back(static_cast<VertexId>(x.index_of(v)));
  return membership_scale(x, ids, p);
}

FilteredComplex::FilteredComplex(VGraph space, PExponent p, std::size_t max_dim)
    : space_(std::move(space)), p_(p), max_dim_(max_dim) {
  verts_.resize(max_dim + 1);
  births_.resize(max_dim + 1);
  lookup_.resize(max_dim + 1);
}

TupleView FilteredComplex::tuple(std::size_t degree, std::size_t i) const {
  const std::size_t stride = degree + 1;
  return TupleView{std::span<const VertexId>(verts_[degree].data() + i * stride, stride), births_[degree][i]};
}

std::optional<std::size_t> FilteredComplex::find(std::span<const VertexId> verts) const {
  if (verts.empty() || verts.size() > max_dim_ + 1) return std::nullopt;
  for (auto v : verts)
    if (v >= space_.size()) return std::nullopt;
  const auto& table = lookup_[verts.size() - 1];
  auto it = table.find(encode(verts, space_.size()));
  if (it == table.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> FilteredComplex::grade_index(ExtScalar r, double eps) const {
  auto it = std::lower_bound(grades_.begin(), grades_.end(), r,
                             [eps](ExtScalar g, ExtScalar v) { return !approx_le(v, g, eps); });
  if (it != grades_.end() && approx_equal(*it, r, eps)) return static_cast<std::size_t>(it - grades_.begin());
  return std::nullopt;
}

std::size_t FilteredComplex::total_tuples() const {
  std::size_t total = 0;
  for (const auto& b : births_) total += b.size();
  return total;
}

FilteredComplex enumerate_complex(const VGraph& x, PExponent p, std::size_t max_dim,
                                  const EnumerationOptions& options) {
  const std::size_t n = x.size();
  FilteredComplex fc(x, p, max_dim);

  if (n > 1) {
    const double key_bits = static_cast<double>(max_dim + 1) * std::log2(static_cast<double>(n));
    if (key_bits >= 127.0) {
      throw InputError("max_dim " + std::to_string(max_dim) + " is too large for " + std::to_string(n) +
                       " vertices");
    }
    const double space_size = std::pow(static_cast<double>(n), static_cast<double>(max_dim + 1));
    if (options.on_warning && space_size > static_cast<double>(options.warn_threshold)) {
      options.on_warning("tuple space |V|^(max_dim+1) = " + std::to_string(static_cast<long double>(space_size)) +
                         " exceeds " + std::to_string(options.warn_threshold) + "; enumeration may be slow");
    }
  }

  const bool max_fold = p.is_inf();
  const auto pw = power_table(x, p);
  std::atomic<std::size_t> produced{0};
  std::atomic<bool> over_budget{false};

  auto run_leading = [&](std::size_t lead, RawTuples& out) {
    std::vector<VertexId> prefix{static_cast<VertexId>(lead)};
    std::vector<double> best{0.0};
    auto record = [&]() {
      const std::size_t deg = prefix.size() - 1;
      out.verts[deg].insert(out.verts[deg].end(), prefix.begin(), prefix.end());
      out.power[deg].push_back(best.back());
      const std::size_t now = ++produced;
      if (options.hard_limit && now > *options.hard_limit) over_budget = true;
    };
    record();
    // Iterative DFS over extensions; prefix.size()-1 is the current degree.
    std::vector<VertexId> next_child{0};
    while (!next_child.empty()) {
      if (over_budget) return;
      if (prefix.size() - 1 == max_dim) {
        next_child.pop_back();
        prefix.pop_back();
        best.pop_back();
        continue;
      }
      VertexId& c = next_child.back();
      if (c >= n) {
        next_child.pop_back();
        prefix.pop_back();
        best.pop_back();
        continue;
      }
      const VertexId v = c++;
      if (v == prefix.back()) continue;
      const double b = extend_best(pw, n, prefix, best, v, max_fold);
      if (std::isinf(b)) continue;
      prefix.push_back(v);
      best.push_back(b);
      record();
      next_child.push_back(0);
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  std::vector<RawTuples> parts(workers);
  for (auto& part : parts) {
    part.verts.resize(max_dim + 1);
    part.power.resize(max_dim + 1);
  }
  if (workers == 1) {
    for (std::size_t lead = 0; lead < n; ++lead) run_leading(lead, parts[0]);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) {
      threads.emplace_back([&, w]() {
        for (std::size_t lead = w; lead < n; lead += workers) run_leading(lead, parts[w]);
      });
    }
    for (auto& t : threads) t.join();
  }
  if (over_budget) {
    throw BudgetExceeded("tuple nerve exceeds the budget of " + std::to_string(*options.hard_limit) +
                         " tuples (max_dim " + std::to_string(max_dim) + ")");
  }

  // Births to ExtScalar, then eps-clustering onto grade representatives.
  std::vector<std::vector<VertexId>> all_verts(max_dim + 1);
  std::vector<std::vector<double>> all_births(max_dim + 1);
  std::vector<double> finite{0.0};
  for (std::size_t d = 0; d <= max_dim; ++d) {
    for (auto& part : parts) {
      all_verts[d].insert(all_verts[d].end(), part.verts[d].begin(), part.verts[d].end());
      for (double pwv : part.power[d]) {
        const double b = from_power_domain(pwv, p).value();
        all_births[d].push_back(b);
        finite.push_back(b);
      }
    }
  }
  std::sort(finite.begin(), finite.end());
  std::vector<double> reps;
  for (double b : finite)
    if (reps.empty() || b > reps.back() + options.eps) reps.push_back(b);
  auto snap = [&](double b) {
    auto it = std::upper_bound(reps.begin(), reps.end(), b);
    return *(it - 1);
  };
  for (double r : reps) fc.grades_.emplace_back(r);

  for (std::size_t d = 0; d <= max_dim; ++d) {
    const std::size_t stride = d + 1;
    const std::size_t count = all_births[d].size();
    for (double& b : all_births[d]) b = snap(b);
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto& vv = all_verts[d];
    const auto& bb = all_births[d];
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
      if (bb[i] != bb[j]) return bb[i] < bb[j];
      return std::lexicographical_compare(vv.begin() + i * stride, vv.begin() + (i + 1) * stride,
                                          vv.begin() + j * stride, vv.begin() + (j + 1) * stride);
    });
    auto& dst_v = fc.verts_[d];
    auto& dst_b = fc.births_[d];
    auto& lookup = fc.lookup_[d];
    dst_v.reserve(count * stride);
    dst_b.reserve(count);
    lookup.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
      const std::size_t i = order[k];
      dst_v.insert(dst_v.end(), vv.begin() + i * stride, vv.begin() + (i + 1) * stride);
      dst_b.emplace_back(bb[i]);
      lookup.emplace(encode(std::span<const VertexId>(vv.data() + i * stride, stride), n), k);
    }
  }
  return fc;
}

std::vector<ExtScalar> critical_grades(const VGraph& x, PExponent p, std::size_t max_dim,
                                       const EnumerationOptions& options) {
  return enumerate_complex(x, p, max_dim, options).grades();
}

}  // namespace qnerve
