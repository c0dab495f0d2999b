#include "priomet/frechet.hpp"

#include <iostream>

#include "priomet/rng.hpp"
#include "priomet/util.hpp"

namespace priomet {

namespace {

constexpr long long kMaxCopies = 1ll << 31;

long long to_ll_checked(const BigInt& v, const char* what) {
  if (!v.fits_slong_p() || v.get_si() > kMaxCopies)
    throw ValidationError(ErrorKind::InvalidParams,
                          std::string(what) + " too large for this implementation");
  return v.get_si();
}

void warn_large_k(int k, int n) {
  if (k >= 1 && n >= 1 && (BigInt(1) << k) > n)
    std::cerr << "priomet: warning: k=" << k << " exceeds log2(n=" << n
              << "); larger k cannot help\n";
}

}  // namespace

int distortion_level(long j, long n, int k) {
  // smallest i >= 1 with j^k <= n^i
  BigInt jk = ipow(BigInt(j), k);
  BigInt npow = 1;
  for (int i = 1; i <= k; ++i) {
    npow *= n;
    if (jk <= npow) return i;
  }
  return k;
}

int dimension_level(long j) {
  int i = 0;
  while (!(BigInt(j) <= (BigInt(1) << (1ul << (i + 1))))) ++i;
  // smallest i with j <= 2^(2^(i+1)); combined with j > 2 this is the level
  return i;
}

CopiedSpace build_copied_space_distortion(const MetricSpace& m, const PriorityOrdering& ord,
                                          int k) {
  if (k < 1) throw ValidationError(ErrorKind::InvalidParams, "k must be >= 1");
  require_invariant(ord.n() == m.n, "ordering size mismatch");
  warn_large_k(k, m.n);
  CopiedSpace cs;
  cs.n = m.n;
  cs.multiplicity.resize(m.n);
  BigInt base = (BigInt(1) << k) * m.n;  // 2^k * n
  BigInt total = 0;
  for (long j = 1; j <= m.n; ++j) {
    int i = distortion_level(j, m.n, k);
    // ceil(base^((k-i)/k)) = ceil((base^(k-i))^(1/k))
    BigInt mult = iroot_ceil(ipow(base, k - i), k);
    cs.multiplicity[j - 1] = to_ll_checked(mult, "copy count");
    total += mult;
  }
  cs.total = to_ll_checked(total, "total copy count");
  require_invariant(big(cs.total) <= base + m.n, "N exceeds 2^k n + n");
  for (int j = 1; j < m.n; ++j)
    require_invariant(cs.multiplicity[j] <= cs.multiplicity[j - 1],
                      "copy counts must be non-increasing in rank");
  return cs;
}

CopiedSpace build_copied_space_dimension(const MetricSpace& m, const PriorityOrdering& ord) {
  require_invariant(ord.n() == m.n, "ordering size mismatch");
  int n = m.n;
  if (n < 3)
    throw ValidationError(ErrorKind::InvalidParams, "dimension copies need n >= 3");
  // L = ceil(log2 log2 n): smallest L with n <= 2^(2^L)
  int L = 0;
  while (!(BigInt(n) <= (BigInt(1) << (1ul << L)))) ++L;

  CopiedSpace cs;
  cs.n = n;
  cs.multiplicity.assign(n, 1);  // ranks 1 and 2 stay at one copy
  BigInt total = 2;
  for (long j = 3; j <= n; ++j) {
    int i = dimension_level(j);
    // C(i) = n (L+1)^2 / (2^(2^(i+1)) (i+2)^2)
    Scalar c(BigInt(n) * (L + 1) * (L + 1),
             (BigInt(1) << (1ul << (i + 1))) * (i + 2) * (i + 2));
    c.canonicalize();
    BigInt mult = ceil_scalar(c);
    if (mult < 1) mult = 1;
    cs.multiplicity[j - 1] = to_ll_checked(mult, "copy count");
    total += mult;
  }
  cs.total = to_ll_checked(total, "total copy count");
  require_invariant(big(cs.total) <= BigInt(n) * (L + 1) * (L + 1) + n,
                    "N exceeds n (loglog n + 1)^2 + n");
  // ranks 1 and 2 sit outside the level sets at one copy each (their anchor
  // coordinates cover them), so monotonicity applies from rank 3 onward
  for (int j = 3; j < n; ++j)
    require_invariant(cs.multiplicity[j] <= cs.multiplicity[j - 1],
                      "copy counts must be non-increasing in rank");
  return cs;
}

namespace {

struct SetTask {
  CoordinateInfo info;
  std::uint64_t stream;
};

// Samples each copy of each point independently and evaluates the Frechet
// coordinate d(x, A) for every x; empty sets give the zero coordinate.
void evaluate_coordinate(const MetricSpace& m, const std::vector<long long>* int_mirror,
                         const PriorityOrdering& ord, const CopiedSpace& cs, SetTask& task,
                         Embedding& out, int coord) {
  SplitRng rng(task.stream);
  std::vector<char> member(m.n, 0);
  long long size = 0;
  for (int j = 1; j <= m.n; ++j) {
    int point = ord.point_of_rank(j);
    for (long long c = 0; c < cs.multiplicity[j - 1]; ++c) {
      std::uint64_t draw = rng.next();
      if (task.info.always || draw < task.info.threshold) {
        member[point] = 1;
        ++size;
      }
    }
  }
  task.info.set_size = size;

  if (size == 0) {
    for (int x = 0; x < m.n; ++x) out.vectors[x][coord] = 0;
    return;
  }
  if (int_mirror) {
    const auto& dm = *int_mirror;
    for (int x = 0; x < m.n; ++x) {
      if (member[x]) {
        out.vectors[x][coord] = 0;
        continue;
      }
      long long best = -1;
      const long long* row = &dm[static_cast<size_t>(x) * m.n];
      for (int y = 0; y < m.n; ++y)
        if (member[y] && (best < 0 || row[y] < best)) best = row[y];
      out.vectors[x][coord] = static_cast<long>(best);
    }
  } else {
    for (int x = 0; x < m.n; ++x) {
      if (member[x]) {
        out.vectors[x][coord] = 0;
        continue;
      }
      bool have = false;
      Scalar best;
      for (int y = 0; y < m.n; ++y)
        if (member[y] && (!have || m.d(x, y) < best)) {
          best = m.d(x, y);
          have = true;
        }
      out.vectors[x][coord] = best;
    }
  }
}

FrechetEmbedding run_tasks(const MetricSpace& m, const PriorityOrdering& ord,
                           const CopiedSpace& cs, std::vector<SetTask> tasks,
                           int anchor_count, const PriorityOrdering* anchors) {
  FrechetEmbedding out;
  int dim = anchor_count + static_cast<int>(tasks.size());
  out.embedding.dim = dim;
  out.embedding.vectors.assign(m.n, std::vector<Scalar>(dim));
  for (int a = 0; a < anchor_count; ++a) {
    int p = anchors->point_of_rank(a + 1);
    for (int x = 0; x < m.n; ++x) out.embedding.vectors[x][a] = m.d(x, p);
  }
  auto mirror = m.int64_mirror();
  const std::vector<long long>* mirror_ptr = mirror ? &*mirror : nullptr;
  parallel_for(tasks.size(), [&](size_t idx) {
    evaluate_coordinate(m, mirror_ptr, ord, cs, tasks[idx], out.embedding,
                        anchor_count + static_cast<int>(idx));
  });
  out.coords.reserve(dim);
  for (int a = 0; a < anchor_count; ++a)
    out.coords.push_back({"anchor(" + std::to_string(a + 1) + ")", true, 0, 1});
  for (auto& t : tasks) out.coords.push_back(std::move(t.info));
  return out;
}

}  // namespace

FrechetEmbedding embed_linf_distortion(const MetricSpace& m, const PriorityOrdering& ord,
                                       const SampleConfig& cfg) {
  if (cfg.k < 1 || cfg.c < 1)
    throw ValidationError(ErrorKind::InvalidParams, "need k >= 1 and c >= 1");
  CopiedSpace cs = build_copied_space_distortion(m, ord, cfg.k);
  long sets_per_density = ceil_c_root_ln(cfg.c, big(cs.total), cfg.k);
  std::vector<SetTask> tasks;
  tasks.reserve(static_cast<size_t>(cfg.k) * sets_per_density);
  for (int i = 1; i <= cfg.k; ++i) {
    SampleThreshold th = threshold_root_inverse(big(cs.total), i, cfg.k);
    for (long h = 1; h <= sets_per_density; ++h) {
      SetTask t;
      t.info.label = "A(i=" + std::to_string(i) + ")";
      t.info.always = th.always;
      t.info.threshold = th.threshold;
      t.stream = derive_stream(cfg.seed, {0x64697374ull /*dist*/, static_cast<std::uint64_t>(i),
                                          static_cast<std::uint64_t>(h)});
      tasks.push_back(std::move(t));
    }
  }
  return run_tasks(m, ord, cs, std::move(tasks), 0, nullptr);
}

FrechetEmbedding embed_linf_dimension(const MetricSpace& m, const PriorityOrdering& ord,
                                      const SampleConfig& cfg) {
  if (cfg.k < 1 || cfg.c < 1)
    throw ValidationError(ErrorKind::InvalidParams, "need k >= 1 and c >= 1");
  warn_large_k(cfg.k, m.n);
  int n = m.n;
  int anchor_count = std::min(2, n);

  if (n < 3) {
    // degenerate: anchors plus E_g sets over single copies
    CopiedSpace cs;
    cs.n = n;
    cs.multiplicity.assign(n, 1);
    cs.total = n;
    std::vector<SetTask> tasks;
    long eg = ceil_c_ln(cfg.c, BigInt(n));
    SampleThreshold th = threshold_reciprocal(big(cs.total));
    for (long g = 1; g <= eg; ++g) {
      SetTask t;
      t.info.label = "E";
      t.info.always = th.always;
      t.info.threshold = th.threshold;
      t.stream = derive_stream(cfg.seed, {0x6567ull /*eg*/, static_cast<std::uint64_t>(g)});
      tasks.push_back(std::move(t));
    }
    return run_tasks(m, ord, cs, std::move(tasks), anchor_count, &ord);
  }

  CopiedSpace cs = build_copied_space_dimension(m, ord);
  int L = 0;
  while (!(BigInt(n) <= (BigInt(1) << (1ul << L)))) ++L;

  std::vector<SetTask> tasks;
  long eg = ceil_c_ln(cfg.c, BigInt(n));
  SampleThreshold eth = threshold_reciprocal(big(cs.total));
  for (long g = 1; g <= eg; ++g) {
    SetTask t;
    t.info.label = "E";
    t.info.always = eth.always;
    t.info.threshold = eth.threshold;
    t.stream = derive_stream(cfg.seed, {0x6567ull, static_cast<std::uint64_t>(g)});
    tasks.push_back(std::move(t));
  }
  for (int i = 0; i < L; ++i) {
    long r_i = ceil_c_pow2_ln(cfg.c, (1l << i) + 2, cfg.k, BigInt(n));
    for (int s = 1; s <= cfg.k; ++s) {
      // probability min(2^a/k exponent form, 1) with a = 2^i (k+s) - 2k + 2s
      long a = (1l << i) * (cfg.k + s) - 2l * cfg.k + 2l * s;
      SampleThreshold th =
          threshold_pow2_ratio(a, cfg.k, BigInt(i + 2) * (i + 2), big(cs.total));
      for (long h = 1; h <= r_i; ++h) {
        SetTask t;
        t.info.label = "A(s=" + std::to_string(s) + ",i=" + std::to_string(i) + ")";
        t.info.always = th.always;
        t.info.threshold = th.threshold;
        t.stream = derive_stream(cfg.seed, {0x64696dull /*dim*/, static_cast<std::uint64_t>(i),
                                            static_cast<std::uint64_t>(s),
                                            static_cast<std::uint64_t>(h)});
        tasks.push_back(std::move(t));
      }
    }
  }
  return run_tasks(m, ord, cs, std::move(tasks), anchor_count, &ord);
}

}  // namespace priomet
