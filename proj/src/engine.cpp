#include "cutkit/engine.hpp"

#include <algorithm>
#include <bit>
#include <condition_variable>
#include <cstring>
#include <mutex>
#include <optional>
#include <thread>

namespace cutkit {

GrundyValue nim_sum(std::span<const GrundyValue> values) {
  GrundyValue x = 0;
  for (GrundyValue v : values) x ^= v;
  return x;
}

// ---------------------------------------------------------------------------
// ValueSet

ValueSet::ValueSet(std::vector<std::uint64_t> words) : words_(std::move(words)) {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

void ValueSet::insert(GrundyValue v) {
  const std::size_t word = v >> 6;
  if (word >= words_.size()) words_.resize(word + 1, 0);
  words_[word] |= std::uint64_t{1} << (v & 63);
}

bool ValueSet::contains(GrundyValue v) const noexcept {
  const std::size_t word = v >> 6;
  return word < words_.size() && (words_[word] >> (v & 63) & 1);
}

void ValueSet::unite(const ValueSet& other) { or_words(other.words_); }

void ValueSet::or_words(std::span<const std::uint64_t> words) {
  if (words.size() > words_.size()) words_.resize(words.size(), 0);
  for (std::size_t j = 0; j < words.size(); ++j) words_[j] |= words[j];
}

GrundyValue ValueSet::mex() const noexcept {
  std::size_t j = mex_floor_ >> 6;
  for (; j < words_.size(); ++j) {
    if (words_[j] != ~std::uint64_t{0}) break;
  }
  GrundyValue m;
  if (j >= words_.size()) {
    m = static_cast<GrundyValue>(64 * words_.size());
  } else {
    m = static_cast<GrundyValue>(64 * j + std::countr_one(words_[j]));
  }
  mex_floor_ = m;
  return m;
}

bool ValueSet::empty() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t ValueSet::size() const noexcept {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<GrundyValue> ValueSet::to_vector() const {
  std::vector<GrundyValue> out;
  for (std::size_t j = 0; j < words_.size(); ++j) {
    std::uint64_t w = words_[j];
    while (w) {
      out.push_back(static_cast<GrundyValue>(64 * j + std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

bool ValueSet::operator==(const ValueSet& other) const noexcept {
  const std::size_t common = std::min(words_.size(), other.words_.size());
  for (std::size_t j = 0; j < common; ++j) {
    if (words_[j] != other.words_[j]) return false;
  }
  for (std::size_t j = common; j < words_.size(); ++j) {
    if (words_[j] != 0) return false;
  }
  for (std::size_t j = common; j < other.words_.size(); ++j) {
    if (other.words_[j] != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Internal machinery

namespace {

using Row = std::vector<std::uint64_t>;
using RowSeq = std::vector<Row>;

// In-word half of an XOR index shift: bit x of every word moves to x ^ low6.
constexpr std::uint64_t kButterflyMask[6] = {
    0x5555555555555555ull, 0x3333333333333333ull, 0x0f0f0f0f0f0f0f0full,
    0x00ff00ff00ff00ffull, 0x0000ffff0000ffffull, 0x00000000ffffffffull,
};

void xor_shift_low6(std::uint64_t* words, int nwords, unsigned low6) {
  for (unsigned b = 0; b < 6; ++b) {
    if (!(low6 >> b & 1u)) continue;
    const unsigned d = 1u << b;
    const std::uint64_t m = kButterflyMask[b];
    for (int j = 0; j < nwords; ++j) {
      const std::uint64_t x = words[j];
      words[j] = ((x & m) << d) | ((x >> d) & m);
    }
  }
}

// Accumulates unions of XOR-shifted rows.  The shift by g decomposes into a
// word-index XOR (g/64), applied while OR-ing terms in, and an in-word
// butterfly (g%64), applied once per 64-class at merge time.
class RowAccumulator {
 public:
  void reset(int nwords) {
    nwords_ = nwords;
    touched_ = 0;
    if (store_.size() < static_cast<std::size_t>(64) * nwords) {
      store_.resize(static_cast<std::size_t>(64) * nwords);
    }
  }

  void add(const Row& src, GrundyValue g) {
    const unsigned lo = g & 63;
    const std::size_t hi = g >> 6;
    std::uint64_t* acc = cls(lo);
    const std::uint64_t* s = src.data();
    const std::size_t ns = src.size();
    if (hi == 0) {
      for (std::size_t j = 0; j < ns; ++j) acc[j] |= s[j];
    } else {
      for (std::size_t j = 0; j < ns; ++j) acc[j ^ hi] |= s[j];
    }
  }

  void add_value(GrundyValue v) { cls(v & 63)[v >> 6] |= 1; }

  // ORs the accumulated content into out (sized >= nwords) and resets.
  void merge_or(Row& out) {
    std::uint64_t t = touched_;
    while (t) {
      const unsigned lo = static_cast<unsigned>(std::countr_zero(t));
      t &= t - 1;
      std::uint64_t* block = store_.data() + static_cast<std::size_t>(lo) * nwords_;
      xor_shift_low6(block, nwords_, lo);
      for (int j = 0; j < nwords_; ++j) out[j] |= block[j];
    }
    touched_ = 0;
  }

 private:
  std::uint64_t* cls(unsigned lo) {
    std::uint64_t* block = store_.data() + static_cast<std::size_t>(lo) * nwords_;
    if (!(touched_ >> lo & 1)) {
      std::fill_n(block, nwords_, 0);
      touched_ |= std::uint64_t{1} << lo;
    }
    return block;
  }

  int nwords_ = 0;
  std::uint64_t touched_ = 0;
  std::vector<std::uint64_t> store_;
};

// values is 1-based (values[a] = G(a)); dep[m] empty below dep_min.
void accumulate_peel(RowAccumulator& acc, const RowSeq& dep, int n, int a_lo, int a_hi,
                     const GrundyValue* values) {
  for (int a = a_lo; a <= a_hi; ++a) {
    const Row& src = dep[n - a];
    if (!src.empty()) acc.add(src, values[a]);
  }
}

void or_rows(Row& dst, const Row& src) {
  for (std::size_t j = 0; j < src.size(); ++j) dst[j] |= src[j];
}

Row trimmed(Row r) {
  while (!r.empty() && r.back() == 0) r.pop_back();
  r.shrink_to_fit();
  return r;
}

GrundyValue mex_of(const Row& row) {
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j] != ~std::uint64_t{0}) {
      return static_cast<GrundyValue>(64 * j + std::countr_one(row[j]));
    }
  }
  return static_cast<GrundyValue>(64 * row.size());
}

// Fixed-size worker pool; run(fn) executes fn(lane) on every lane with the
// caller serving lane 0.
class Pool {
 public:
  explicit Pool(int lanes) : lanes_(std::max(1, lanes)) {
    workers_.reserve(lanes_ - 1);
    for (int i = 1; i < lanes_; ++i) {
      workers_.emplace_back([this, i] { worker(i); });
    }
  }

  ~Pool() {
    {
      std::lock_guard lk(m_);
      stop_ = true;
    }
    cv_.notify_all();
    for (auto& w : workers_) w.join();
  }

  int lanes() const { return lanes_; }

  void run(const std::function<void(int)>& fn) {
    if (lanes_ == 1) {
      fn(0);
      return;
    }
    {
      std::lock_guard lk(m_);
      fn_ = &fn;
      pending_ = lanes_ - 1;
      ++generation_;
    }
    cv_.notify_all();
    fn(0);
    std::unique_lock lk(m_);
    done_cv_.wait(lk, [this] { return pending_ == 0; });
    fn_ = nullptr;
    if (error_) {
      std::exception_ptr e = error_;
      error_ = nullptr;
      std::rethrow_exception(e);
    }
  }

 private:
  void worker(int lane) {
    std::uint64_t seen = 0;
    std::unique_lock lk(m_);
    for (;;) {
      cv_.wait(lk, [&] { return stop_ || generation_ != seen; });
      if (stop_) return;
      seen = generation_;
      const auto* fn = fn_;
      lk.unlock();
      std::exception_ptr err;
      try {
        (*fn)(lane);
      } catch (...) {
        err = std::current_exception();
      }
      lk.lock();
      if (err && !error_) error_ = err;
      if (--pending_ == 0) done_cv_.notify_one();
    }
  }

  const int lanes_;
  std::vector<std::thread> workers_;
  std::mutex m_;
  std::condition_variable cv_;
  std::condition_variable done_cv_;
  const std::function<void(int)>* fn_ = nullptr;
  int pending_ = 0;
  std::uint64_t generation_ = 0;
  bool stop_ = false;
  std::exception_ptr error_;
};

struct TailPlan {
  TailKind kind = TailKind::None;
  int t = 0;
  int top_mex = 0;  // part count whose at-least-ladder row feeds the mex union
  int top_r2 = 0;   // part count feeding reach2plus
  int levels = 0;   // stored ladder levels 1..levels
};

TailPlan plan_tail(const RulesetSpec& spec) {
  TailPlan plan;
  plan.kind = spec.tail();
  if (plan.kind == TailKind::None) return plan;
  plan.t = spec.tail_from();
  plan.top_mex = plan.t + 1;
  if (plan.kind == TailKind::AllFrom) {
    plan.top_r2 = std::max(plan.t, 2) + 1;
  } else {
    plan.top_r2 = plan.t >= 3 ? plan.t + 1 : 4;
  }
  plan.levels = std::max(plan.top_mex, plan.top_r2) - 1;
  return plan;
}

}  // namespace

// ---------------------------------------------------------------------------
// GrundyTable

struct GrundyTable::Impl {
  RulesetSpec spec = RulesetSpec::parse("1");
  int n_max = 0;
  std::vector<GrundyValue> values;  // [0] unused
  GrundyValue max_value = 0;
  int max_base = 0;
  TailPlan tail;
  std::vector<RowSeq> exact;   // exact[i]: part-count i+2 rows (up to max_base parts)
  std::vector<RowSeq> ladder;  // ladder[i]: at-least-(i+1)-parts rows
  std::vector<ValueSet> reach2;  // [1..retain]
  int retain = 0;
};

const RulesetSpec& GrundyTable::ruleset() const noexcept { return impl_->spec; }
int GrundyTable::size() const noexcept { return impl_->n_max; }

GrundyValue GrundyTable::value(int n) const {
  if (n < 1 || n > impl_->n_max) {
    throw Error(ErrorCode::OutOfRange,
                "heap size " + std::to_string(n) + " outside table range 1.." +
                    std::to_string(impl_->n_max));
  }
  return impl_->values[static_cast<std::size_t>(n)];
}

std::span<const GrundyValue> GrundyTable::values() const noexcept {
  return {impl_->values.data() + 1, static_cast<std::size_t>(impl_->n_max)};
}

GrundyValue GrundyTable::max_value() const noexcept { return impl_->max_value; }

bool GrundyTable::has_reach2plus(int n) const {
  return n >= 1 && n <= impl_->retain;
}

const ValueSet& GrundyTable::reach2plus(int n) const {
  if (!has_reach2plus(n)) {
    throw Error(ErrorCode::OutOfRange,
                "reach2plus row " + std::to_string(n) + " not retained");
  }
  return impl_->reach2[static_cast<std::size_t>(n)];
}

ValueSet GrundyTable::reachable(int n, int c) const {
  if (n < 1 || n > impl_->n_max || c < 1) {
    throw Error(ErrorCode::OutOfRange, "reachable(" + std::to_string(n) + ", " +
                                           std::to_string(c) + ") outside the table");
  }
  if (c > n - 1) return ValueSet{};
  const GrundyValue* v = impl_->values.data();
  const int parts = c + 1;

  if (parts == 2) {
    ValueSet out;
    for (int a = 1; a <= n / 2; ++a) out.insert(v[a] ^ v[n - a]);
    return out;
  }
  if (static_cast<std::size_t>(parts - 2) < impl_->exact.size()) {
    return ValueSet(Row(impl_->exact[static_cast<std::size_t>(parts) - 2][n]));
  }

  // Rebuild: exact rows for part counts up to `parts`, sizes up to n.
  const int nwords =
      static_cast<int>(std::max<std::uint64_t>(64, std::bit_ceil<std::uint64_t>(impl_->max_value + 1)) / 64);
  RowAccumulator acc;
  RowSeq prev(static_cast<std::size_t>(n) + 1);
  for (int m = 2; m <= n; ++m) {
    Row row(static_cast<std::size_t>(nwords), 0);
    for (int a = 1; a <= m / 2; ++a) {
      const GrundyValue x = v[a] ^ v[m - a];
      row[x >> 6] |= std::uint64_t{1} << (x & 63);
    }
    prev[static_cast<std::size_t>(m)] = trimmed(std::move(row));
  }
  for (int j = 3; j <= parts; ++j) {
    RowSeq cur(static_cast<std::size_t>(n) + 1);
    const int top = (j == parts) ? n : n - (parts - j);
    for (int m = j; m <= top; ++m) {
      Row row(static_cast<std::size_t>(nwords), 0);
      acc.reset(nwords);
      accumulate_peel(acc, prev, m, 1, m - (j - 1), v);
      acc.merge_or(row);
      cur[static_cast<std::size_t>(m)] = trimmed(std::move(row));
    }
    prev.swap(cur);
  }
  return ValueSet(Row(prev[static_cast<std::size_t>(n)]));
}

// ---------------------------------------------------------------------------
// compute_table

GrundyTable compute_table(const RulesetSpec& spec, int n_max, const EngineOptions& opts) {
  if (n_max < 1) throw Error(ErrorCode::OutOfRange, "table length must be at least 1");
  if (n_max > kTableCapacity) {
    throw Error(ErrorCode::CapacityExceeded, "table length " + std::to_string(n_max) +
                                                 " exceeds the capacity " +
                                                 std::to_string(kTableCapacity));
  }

  auto impl = std::make_shared<GrundyTable::Impl>();
  impl->spec = spec;
  impl->n_max = n_max;
  impl->values.assign(static_cast<std::size_t>(n_max) + 1, 0);
  impl->max_base = spec.base().empty() ? 0 : spec.base().back();
  impl->tail = plan_tail(spec);
  impl->retain = opts.reach2plus_limit < 0 ? n_max : std::min(n_max, opts.reach2plus_limit);
  impl->reach2.resize(static_cast<std::size_t>(impl->retain) + 1);

  const bool base_has_one = !spec.base().empty() && spec.base().front() == 1;
  std::vector<int> base_cuts2;  // base cut-numbers >= 2
  for (int c : spec.base()) {
    if (c >= 2) base_cuts2.push_back(c);
  }

  if (impl->max_base >= 2) {
    impl->exact.resize(static_cast<std::size_t>(impl->max_base) - 1,
                       RowSeq(static_cast<std::size_t>(n_max) + 1));
  }
  if (impl->tail.kind != TailKind::None) {
    impl->ladder.resize(static_cast<std::size_t>(impl->tail.levels),
                        RowSeq(static_cast<std::size_t>(n_max) + 1));
  }

  Pool pool(std::clamp(opts.threads, 1, 256));
  std::vector<RowAccumulator> accs(static_cast<std::size_t>(pool.lanes()));
  const GrundyValue* v = impl->values.data();

  int nwords = 1;  // current universe, in 64-bit words; always a power of two

  // Builds one row as the union over first parts a of values[a] XOR dep[n-a].
  auto peel = [&](const RowSeq& dep, int dep_min, int n, Row& out) {
    const int a_max = n - dep_min;
    if (a_max < 1) return;
    if (pool.lanes() > 1 && static_cast<long>(a_max) * nwords >= 8192) {
      pool.run([&](int lane) {
        const int lanes = pool.lanes();
        const int lo = 1 + static_cast<int>(static_cast<long>(a_max) * lane / lanes);
        const int hi = static_cast<int>(static_cast<long>(a_max) * (lane + 1) / lanes);
        accs[static_cast<std::size_t>(lane)].reset(nwords);
        accumulate_peel(accs[static_cast<std::size_t>(lane)], dep, n, lo, hi, v);
      });
      for (auto& acc : accs) acc.merge_or(out);
    } else {
      accs[0].reset(nwords);
      accumulate_peel(accs[0], dep, n, 1, a_max, v);
      accs[0].merge_or(out);
    }
  };

  // Per-n cached rows, keyed by part count / ladder level.
  std::vector<std::optional<Row>> exact_cache(static_cast<std::size_t>(impl->max_base) + 2);
  std::vector<std::optional<Row>> ladder_cache(static_cast<std::size_t>(impl->tail.levels) + 2);

  for (int n = 1; n <= n_max; ++n) {
    std::fill(exact_cache.begin(), exact_cache.end(), std::nullopt);
    std::fill(ladder_cache.begin(), ladder_cache.end(), std::nullopt);

    auto exact_row = [&](int parts) -> Row& {
      auto& slot = exact_cache[static_cast<std::size_t>(parts)];
      if (!slot) {
        Row row(static_cast<std::size_t>(nwords), 0);
        if (parts == 2) {
          for (int a = 1; a <= n / 2; ++a) {
            const GrundyValue x = v[a] ^ v[n - a];
            row[x >> 6] |= std::uint64_t{1} << (x & 63);
          }
        } else {
          peel(impl->exact[static_cast<std::size_t>(parts) - 3], parts - 1, n, row);
        }
        slot = std::move(row);
      }
      return *slot;
    };
    auto ladder_row = [&](int level) -> Row& {  // level >= 2
      auto& slot = ladder_cache[static_cast<std::size_t>(level)];
      if (!slot) {
        Row row(static_cast<std::size_t>(nwords), 0);
        peel(impl->ladder[static_cast<std::size_t>(level) - 2], level - 1, n, row);
        slot = std::move(row);
      }
      return *slot;
    };

    Row mexrow(static_cast<std::size_t>(nwords), 0);
    Row r2row(static_cast<std::size_t>(nwords), 0);

    if (base_has_one && n >= 2) or_rows(mexrow, exact_row(2));
    for (int c : base_cuts2) {
      if (c > n - 1) break;
      or_rows(r2row, exact_row(c + 1));
    }
    if (impl->tail.kind != TailKind::None) {
      if (impl->tail.top_mex == impl->tail.top_r2) {
        or_rows(r2row, ladder_row(impl->tail.top_mex));
      } else {
        or_rows(mexrow, ladder_row(impl->tail.top_mex));
        or_rows(r2row, ladder_row(impl->tail.top_r2));
      }
    }
    or_rows(mexrow, r2row);

    const GrundyValue g = mex_of(mexrow);
    impl->values[static_cast<std::size_t>(n)] = g;
    if (g > impl->max_value) {
      impl->max_value = g;
      nwords = static_cast<int>(
          std::max<std::uint64_t>(64, std::bit_ceil<std::uint64_t>(impl->max_value + 1)) / 64);
    }

    for (int parts = 2; parts <= impl->max_base; ++parts) {
      impl->exact[static_cast<std::size_t>(parts) - 2][static_cast<std::size_t>(n)] =
          trimmed(std::move(exact_row(parts)));
    }
    if (impl->tail.kind != TailKind::None) {
      for (int level = impl->tail.levels; level >= 2; --level) {
        impl->ladder[static_cast<std::size_t>(level) - 1][static_cast<std::size_t>(n)] =
            trimmed(std::move(ladder_row(level)));
      }
      // At-least-1-part rows carry the whole-heap value; the peel dependency
      // skips one level for the parity-constrained ladder.
      Row row(static_cast<std::size_t>(nwords), 0);
      if (impl->tail.kind == TailKind::AllFrom) {
        peel(impl->ladder[0], 1, n, row);
      } else if (impl->tail.levels >= 2) {
        peel(impl->ladder[1], 2, n, row);
      }
      row[g >> 6] |= std::uint64_t{1} << (g & 63);
      impl->ladder[0][static_cast<std::size_t>(n)] = trimmed(std::move(row));
    }
    if (n <= impl->retain) {
      impl->reach2[static_cast<std::size_t>(n)] = ValueSet(trimmed(std::move(r2row)));
    }
  }

  return GrundyTable(std::move(impl));
}

// ---------------------------------------------------------------------------
// Oracle

void for_each_option(const RulesetSpec& spec, int n,
                     const std::function<void(int c, std::span<const int> parts)>& fn) {
  if (n < 1) throw Error(ErrorCode::OutOfRange, "heap size must be at least 1");
  if (n > kOracleScale) {
    throw Error(ErrorCode::OracleScaleExceeded,
                "heap size " + std::to_string(n) + " beyond the oracle scale " +
                    std::to_string(kOracleScale));
  }
  std::vector<int> parts;
  auto rec = [&](auto&& self, int c, int remaining, int k, int min_part) -> void {
    if (k == 1) {
      parts.push_back(remaining);
      fn(c, parts);
      parts.pop_back();
      return;
    }
    for (int a = min_part; a * k <= remaining; ++a) {
      parts.push_back(a);
      self(self, c, remaining - a, k - 1, a);
      parts.pop_back();
    }
  };
  for (int c : spec.cuts_for(n)) rec(rec, c, n, c + 1, 1);
}

std::vector<GrundyValue> brute_grundy(const RulesetSpec& spec, int n_max) {
  if (n_max < 1) throw Error(ErrorCode::OutOfRange, "table length must be at least 1");
  if (n_max > kOracleScale) {
    throw Error(ErrorCode::OracleScaleExceeded,
                "table length " + std::to_string(n_max) + " beyond the oracle scale " +
                    std::to_string(kOracleScale));
  }
  std::vector<GrundyValue> g(static_cast<std::size_t>(n_max));  // g[i] = G(i+1)
  for (int n = 1; n <= n_max; ++n) {
    ValueSet options;
    for_each_option(spec, n, [&](int, std::span<const int> parts) {
      GrundyValue x = 0;
      for (int p : parts) x ^= g[static_cast<std::size_t>(p) - 1];
      options.insert(x);
    });
    g[static_cast<std::size_t>(n) - 1] = options.mex();
  }
  return g;
}

// ---------------------------------------------------------------------------
// Residue distinctness

ResidueReport residue_distinctness(const GrundyTable& table) {
  const RulesetSpec& spec = table.ruleset();
  int step = 0;
  for (int c : spec.base()) {
    if (c % 2 == 0) {
      step = c;
      break;
    }
  }
  if (spec.tail() == TailKind::AllFrom) {
    const int t = spec.tail_from();
    const int even_from = t % 2 == 0 ? t : t + 1;
    if (step == 0 || even_from < step) step = even_from;
  }
  if (step == 0) {
    throw Error(ErrorCode::NotApplicable, "ruleset has no even cut-number");
  }

  ResidueReport report;
  report.step = step;
  report.checked_n = table.size();
  const int n_max = table.size();
  std::vector<int> first(static_cast<std::size_t>(table.max_value()) + 1);
  for (int r = 0; r < step; ++r) {
    std::fill(first.begin(), first.end(), 0);
    for (int n = (r == 0 ? step : r); n <= n_max; n += step) {
      const GrundyValue g = table.value(n);
      if (int& f = first[g]; f != 0) {
        report.violations.push_back({f, n});
      } else {
        f = n;
      }
    }
  }
  return report;
}

}  // namespace cutkit
