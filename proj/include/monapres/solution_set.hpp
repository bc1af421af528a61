#pragma once

#include "lrbs.hpp"
#include "pell.hpp"
#include "polynomial.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace monapres {

struct SolverOptions {
  Int bound{1000000};                 // H: auxiliary unknowns in bounded enumerations
  std::uint64_t scan_cap{1000000};    // candidates inspected by the witness search
  Int interval_cap{10000000};         // widest interval resolved by direct scan
  Int residue_cap{2000000};           // widest modulus whose residues are tabulated
  std::int64_t lrbs_index_bound{200}; // indices per direction in bounded Pell enumeration
};

// {p(s) : s mod modulus in residues}.  A lazy family has no residue table; its
// members are all integral values p(s), filtered later by the pointwise check.
struct ImageFamily {
  RatPoly p;
  Int modulus{1};
  std::vector<Int> residues{Int(0)};
  bool lazy{false};
  std::string label;

  bool admits(const Int& s) const {
    if (lazy) return true;
    return std::binary_search(residues.begin(), residues.end(), mod_floor(s, modulus));
  }
  std::optional<Int> value(const Int& s) const {
    if (!admits(s)) return std::nullopt;
    return as_integer(p.eval(Rat(s)));
  }
  // p(u + modulus*s) for a tabulated residue u.
  RatPoly branch(const Int& u) const { return p.compose(RatPoly::linear(Rat(modulus), Rat(u))); }
};

// {map(u_m / div) : m in index}, u an order-2 Pell bi-sequence.
struct LrbsFamily {
  Lrbs seq;
  Int div{1};
  RatPoly map;
  IndexSet index;
  std::string label;
  Int radicand{0};  // Pell data behind seq, when known
  PellPair unit{1, 0};

  std::optional<Int> value_from(const Int& u) const {
    if (!divides(div, u)) return std::nullopt;
    return as_integer(map.eval(Rat(Int(u / div))));
  }
  std::optional<Int> value_at(std::int64_t m) const {
    if (!index.contains(m)) return std::nullopt;
    return value_from(seq.eval(m));
  }
};

struct SolutionSet {
  enum class Kind { All, Images, Lrbs, Finite, Empty };
  bool all{false};
  std::vector<ImageFamily> images;
  std::vector<LrbsFamily> lrbs;
  std::vector<Int> finite;  // sorted, distinct
  bool complete{true};
  std::optional<Int> complete_below;  // incomplete sets list every member <= this
  std::string label;

  static SolutionSet everything(std::string label = "all") {
    SolutionSet s;
    s.all = true;
    s.label = std::move(label);
    return s;
  }
  static SolutionSet empty(std::string label) {
    SolutionSet s;
    s.label = std::move(label);
    return s;
  }
  static SolutionSet of(std::vector<Int> xs, std::string label, bool complete = true) {
    SolutionSet s;
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    s.finite = std::move(xs);
    s.complete = complete;
    s.label = std::move(label);
    return s;
  }

  bool infinite() const { return all || !images.empty() || !lrbs.empty(); }
  Kind kind() const {
    if (all) return Kind::All;
    if (!lrbs.empty()) return Kind::Lrbs;
    if (!images.empty()) return Kind::Images;
    if (!finite.empty() || !complete) return Kind::Finite;
    return Kind::Empty;
  }
  bool provably_empty() const { return kind() == Kind::Empty && complete; }
};

inline const char* kind_name(SolutionSet::Kind k) {
  switch (k) {
    case SolutionSet::Kind::All: return "all";
    case SolutionSet::Kind::Images: return "poly-images";
    case SolutionSet::Kind::Lrbs: return "lrbs-union";
    case SolutionSet::Kind::Finite: return "finite";
    case SolutionSet::Kind::Empty: return "empty";
  }
  return "?";
}

// Roots of p' lie in |s| <= bound.
inline Int critical_bound(const RatPoly& p) {
  RatPoly d = p.derivative();
  if (d.degree() < 1) return 0;
  Rat mx = 0;
  for (int i = 0; i < d.degree(); ++i) mx = std::max(mx, Rat(abs(d.c[static_cast<std::size_t>(i)] / d.lead())));
  return ceil_rat(mx) + 1;
}

namespace detail {

class Stream {
 public:
  virtual ~Stream() = default;
  virtual std::optional<Int> peek() = 0;
  virtual void pop() = 0;
};

class CountingStream : public Stream {
 public:
  explicit CountingStream(Int start) : cur_(std::move(start)) {}
  std::optional<Int> peek() override { return cur_; }
  void pop() override { ++cur_; }

 private:
  Int cur_;
};

class ListStream : public Stream {
 public:
  explicit ListStream(std::vector<Int> xs) : xs_(std::move(xs)) { std::sort(xs_.begin(), xs_.end()); }
  std::optional<Int> peek() override {
    if (i_ >= xs_.size()) return std::nullopt;
    return xs_[i_];
  }
  void pop() override { ++i_; }

 private:
  std::vector<Int> xs_;
  std::size_t i_{0};
};

// Increasing values of an image family along one monotone tail.
class ImageTail : public Stream {
 public:
  ImageTail(const ImageFamily& f, Int s, int dir) : f_(f), s_(std::move(s)), dir_(dir) { settle(); }
  std::optional<Int> peek() override { return val_; }
  void pop() override {
    s_ += dir_;
    settle();
  }

 private:
  const ImageFamily& f_;
  Int s_;
  int dir_;
  std::optional<Int> val_;

  void settle() {
    for (int guard = 0;; ++guard) {
      advance_to_admissible();
      val_ = as_integer(f_.p.eval(Rat(s_)));
      if (val_) return;
      s_ += dir_;
      if (guard > 1000000) throw std::runtime_error("image family has no integral values");
    }
  }
  void advance_to_admissible() {
    if (f_.lazy || f_.modulus == 1) return;
    Int r = mod_floor(s_, f_.modulus);
    const auto& rs = f_.residues;
    if (dir_ > 0) {
      auto it = std::lower_bound(rs.begin(), rs.end(), r);
      if (it != rs.end()) s_ += *it - r;
      else s_ += f_.modulus - r + rs.front();
    } else {
      auto it = std::upper_bound(rs.begin(), rs.end(), r);
      if (it != rs.begin()) s_ -= r - *std::prev(it);
      else s_ -= r + (f_.modulus - rs.back());
    }
  }
};

// Values of an Lrbs family beyond its monotone region, increasing.
class LrbsTail : public Stream {
 public:
  LrbsTail(const LrbsFamily& f, std::vector<Int> window, std::int64_t m, int dir)
      : f_(f), w_(std::move(window)), m_(m), dir_(dir) { settle(); }
  std::optional<Int> peek() override { return val_; }
  void pop() override {
    step();
    settle();
  }

 private:
  const LrbsFamily& f_;
  std::vector<Int> w_;  // (u_m, u_{m+1})
  std::int64_t m_;
  int dir_;
  std::optional<Int> val_;

  void step() {
    if (dir_ > 0) f_.seq.step_forward(w_);
    else f_.seq.step_backward(w_);
    m_ += dir_;
  }
  void settle() {
    for (int guard = 0; guard < 100000; ++guard) {
      if (f_.index.contains(m_)) {
        val_ = f_.value_from(w_[0]);
        if (val_) return;
      }
      step();
    }
    val_.reset();
  }
};

inline Int first_above(const std::function<Int(const Int&)>& g, Int s, int dir, const Int& lower) {
  // g increasing as s moves in dir; smallest step from s with g > lower
  if (g(s) > lower) return s;
  Int step = 1;
  Int lo = s, hi = s + dir * step;
  while (g(hi) <= lower) {
    lo = hi;
    step *= 2;
    hi = s + dir * step;
  }
  while (abs_int(hi - lo) > 1) {
    Int mid = lo + dir * (abs_int(hi - lo) / 2);
    if (g(mid) > lower) hi = mid; else lo = mid;
  }
  return hi;
}

}  // namespace detail

struct SearchResult {
  enum class Status { Found, Exhausted, Capped };
  Status status{Status::Exhausted};
  std::optional<Int> y;
  std::uint64_t inspected{0};
  bool exhaustive{true};  // Exhausted and every member below the cutoff was seen
  std::optional<Int> last;
};

// Members y > lower (and y < upper) of S in increasing order; first accepted wins.
inline SearchResult search(const SolutionSet& S, const Int& lower, const std::optional<Int>& upper,
                           const std::function<bool(const Int&)>& accept, const SolverOptions& opt) {
  using namespace detail;
  std::vector<std::unique_ptr<Stream>> streams;
  std::vector<Int> fin;
  SearchResult res;
  if (S.all) streams.push_back(std::make_unique<CountingStream>(lower + 1));
  for (const auto& x : S.finite)
    if (x > lower) fin.push_back(x);

  for (const auto& f : S.images) {
    int deg = f.p.degree();
    int lead = sgn(f.p.lead());
    Int c0 = critical_bound(f.p);
    if (c0 > opt.interval_cap) throw std::length_error("image family critical region too wide");
    for (Int s = -c0; s <= c0; ++s)
      if (auto v = f.value(s); v && *v > lower) fin.push_back(*v);
    for (int dir : {1, -1}) {
      int trend = lead * ((deg % 2 == 1 && dir < 0) ? -1 : 1);  // +1: increasing away from 0
      Int s0 = dir * (c0 + 1);
      auto g = [&](const Int& s) { return floor_rat(f.p.eval(Rat(s))); };
      if (trend > 0) {
        Int start = first_above(g, s0, dir, lower);
        streams.push_back(std::make_unique<ImageTail>(f, start, dir));
      } else {
        for (Int s = s0; f.p.eval(Rat(s)) > Rat(lower); s += dir) {
          if (auto v = f.value(s); v && *v > lower) fin.push_back(*v);
          if (++res.inspected > opt.scan_cap) throw std::length_error("decreasing tail too long");
        }
      }
    }
  }

  for (const auto& f : S.lrbs) {
    if (f.index.is_empty()) continue;
    Int cmap = critical_bound(f.map) * abs_int(f.div);
    for (int dir : {1, -1}) {
      std::vector<Int> w = f.seq.init;  // (u_0, u_1)
      std::int64_t m = 0;
      if (dir < 0) {
        f.seq.step_backward(w);
        m = -1;
      }
      // head: until |u| grows, keeps its sign and clears the map's critical region
      std::optional<Int> prev_val;
      int trend = 0;
      for (std::int64_t guard = 0;; ++guard) {
        if (guard > 100000) throw std::runtime_error("lrbs family never grows");
        std::vector<Int> nx = w;
        if (dir > 0) f.seq.step_forward(nx); else f.seq.step_backward(nx);
        const Int& u = w[0];
        const Int& un = nx[0];
        bool settled = has_growth_certificate(f.seq) && abs_int(un) > abs_int(u) && sgn(un) == sgn(u) &&
                       abs_int(u) > cmap;
        if (settled) {
          Rat a = f.map.eval(Rat(Rat(u) / Rat(f.div))), b = f.map.eval(Rat(Rat(un) / Rat(f.div)));
          trend = b > a ? 1 : -1;
          break;
        }
        if (f.index.contains(m))
          if (auto v = f.value_from(u); v && *v > lower) fin.push_back(*v);
        w = nx;
        m += dir;
      }
      if (trend > 0) {
        // skip quickly to values above lower
        streams.push_back(std::make_unique<LrbsTail>(f, w, m, dir));
      } else {
        for (;;) {
          Rat v = f.map.eval(Rat(Rat(w[0]) / Rat(f.div)));
          if (v <= Rat(lower)) break;
          if (f.index.contains(m))
            if (auto iv = f.value_from(w[0]); iv && *iv > lower) fin.push_back(*iv);
          if (dir > 0) f.seq.step_forward(w); else f.seq.step_backward(w);
          m += dir;
        }
      }
    }
  }
  streams.push_back(std::make_unique<ListStream>(std::move(fin)));

  res.inspected = 0;
  std::optional<Int> last;
  for (;;) {
    Stream* best = nullptr;
    std::optional<Int> bv;
    for (auto& st : streams) {
      auto v = st->peek();
      while (v && *v <= lower) {
        st->pop();
        v = st->peek();
      }
      if (v && (!bv || *v < *bv)) {
        bv = v;
        best = st.get();
      }
    }
    if (!best || (upper && *bv >= *upper)) {
      res.status = SearchResult::Status::Exhausted;
      res.exhaustive = S.complete || (S.complete_below && upper && *S.complete_below >= *upper - 1);
      res.last = last;
      return res;
    }
    best->pop();
    if (last && *last == *bv) continue;
    last = bv;
    if (++res.inspected > opt.scan_cap) {
      res.status = SearchResult::Status::Capped;
      res.exhaustive = false;
      res.last = last;
      return res;
    }
    if (accept(*bv)) {
      res.status = SearchResult::Status::Found;
      res.y = bv;
      return res;
    }
  }
}

// First `count` members above lower, for tests and reports.
inline std::vector<Int> members(const SolutionSet& S, const Int& lower, std::size_t count,
                                const SolverOptions& opt = {}) {
  std::vector<Int> out;
  search(S, lower, std::nullopt, [&](const Int& y) {
    out.push_back(y);
    return out.size() >= count;
  }, opt);
  return out;
}

}  // namespace monapres
