#include "k3walls/walls.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace k3walls {

namespace {

bool proportional(const MukaiVector& a, const MukaiVector& b) {
  return a.r * b.c - a.c * b.r == 0 && a.r * b.s - a.s * b.r == 0 && a.c * b.s - a.s * b.c == 0;
}

Rational slope_of(const MukaiVector& v) { return make_rational(v.c, v.r); }

// Smallest integer s with pred(s), for pred false below and true above some
// threshold. `guess` only seeds the search.
Integer lowest_true(const std::function<bool(const Integer&)>& pred, Integer guess) {
  Integer step = 1;
  if (pred(guess)) {
    Integer lo = guess - step;
    while (pred(lo)) {
      step *= 2;
      lo = guess - step;
    }
    Integer hi = guess;  // pred(hi) true, pred(lo) false
    while (hi - lo > 1) {
      Integer mid = lo + (hi - lo) / 2;
      (pred(mid) ? hi : lo) = mid;
    }
    return hi;
  }
  Integer hi = guess + step;
  while (!pred(hi)) {
    step *= 2;
    hi = guess + step;
  }
  Integer lo = guess;
  while (hi - lo > 1) {
    Integer mid = lo + (hi - lo) / 2;
    (pred(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

Rational q_invariant(const K3Config& cfg, const MukaiVector& v) {
  if (v.r == 0) throw DomainError("Q is undefined for rank-zero v");
  return make_rational(square(cfg, v), cfg.h2 * v.r * v.r);
}

std::optional<Wall> numerical_wall(const K3Config& cfg, const MukaiVector& v, const MukaiVector& w) {
  if (v.r <= 0) throw DomainError("numerical_wall needs v.r > 0");
  if (proportional(v, w)) throw DomainError("w = " + to_string(w) + " is proportional to v");
  const Integer d = v.r * w.c - v.c * w.r;
  if (d == 0) return Wall{VerticalWall{slope_of(v)}, w, {}};

  // Wall equation divided by (H^2/2) d:  alpha^2 + beta^2 - 2 C beta + K = 0
  const Rational hd(cfg.h2 * d);
  const Rational center = Rational(v.r * w.s - v.s * w.r) / hd;
  const Rational k = Rational(2 * (w.s * v.c - v.s * w.c)) / hd;
  const Rational radius2 = center * center - k;
  if (sgn(radius2) <= 0) return std::nullopt;
  return Wall{Semicircle{center, radius2}, w, {}};
}

bool side_constraint_check(const K3Config& cfg, const MukaiVector& v, const Semicircle& wall) {
  const Rational offset = wall.center - slope_of(v);
  return cmp(Rational(offset * offset), q_invariant(cfg, v)) > 0;
}

std::optional<Rational> ray_intersection(const Semicircle& wall, const Rational& beta0) {
  const Rational d = beta0 - wall.center;
  Rational a2 = wall.radius2 - d * d;
  if (sgn(a2) <= 0) return std::nullopt;
  return a2;
}

bool lies_on(const WallShape& shape, const Rational& beta, const Rational& alpha2) {
  if (sgn(alpha2) <= 0) return false;
  if (const auto* vw = std::get_if<VerticalWall>(&shape)) return vw->beta == beta;
  const auto& sc = std::get<Semicircle>(shape);
  const Rational d = beta - sc.center;
  return d * d + alpha2 == sc.radius2;
}

Wall vertical_wall(const MukaiVector& v) {
  if (v.r <= 0) throw DomainError("vertical wall needs v.r > 0");
  return Wall{VerticalWall{slope_of(v)}, v + MukaiVector{0, 0, 1}, {}};
}

std::vector<WallHole> wall_holes(const K3Config& cfg, const WallShape& shape, unsigned rank_limit) {
  std::vector<WallHole> out;
  if (const auto* vw = std::get_if<VerticalWall>(&shape)) {
    const Integer q = vw->beta.get_den();
    const unsigned t_limit = static_cast<unsigned>(rank_limit / q.get_ui());
    for (const auto& h : find_holes_on_ray(cfg, vw->beta, t_limit))
      out.push_back({vw->beta, h.alpha2_threshold, h.delta});
    return out;
  }
  const auto& sc = std::get<Semicircle>(shape);
  for (unsigned r = 1; r <= rank_limit; ++r) {
    const Integer rank(r);
    const Rational alpha2 = make_rational(Integer(2), cfg.h2 * rank * rank);
    // need (c/r - C)^2 = R^2 - alpha2
    const auto offset = exact_sqrt(Rational(sc.radius2 - alpha2));
    if (!offset || sgn(*offset) == 0) continue;
    for (const Rational& beta : {Rational(sc.center - *offset), Rational(sc.center + *offset)}) {
      const Rational c = beta * Rational(rank);
      if (!is_integer(c)) continue;
      const Integer numer = cfg.h2 * c.get_num() * c.get_num() + 2;
      if (numer % (2 * rank) != 0) continue;
      out.push_back({beta, alpha2, MukaiVector{rank, c.get_num(), numer / (2 * rank)}});
    }
  }
  std::sort(out.begin(), out.end(), [](const WallHole& a, const WallHole& b) {
    return a.beta != b.beta ? a.beta < b.beta : a.delta < b.delta;
  });
  return out;
}

SearchResult search_destabilizers(const K3Config& cfg, const MukaiVector& v,
                                  const SearchWindow& window) {
  if (v.r <= 0) throw DomainError("search_destabilizers needs v.r > 0");
  const Rational mu = slope_of(v);
  const Rational& beta0 = window.beta0;
  const int side = window.side == Side::LeftOfVertical ? -1 : 1;
  if (cmp(beta0, mu) * side <= 0)
    throw DomainError("ray beta0 = " + to_string(beta0) + " is not on the requested side of the vertical wall");

  const MukaiVector vh = expected_shift(v, beta0) == 0 ? v : -v;
  const Rational im_v = Rational(vh.c) - beta0 * Rational(vh.r);
  const Rational q = q_invariant(cfg, v);
  const Rational h(cfg.h2);

  SearchResult result;
  auto& sat = result.saturation;
  sat.rank_bound = window.rank_bound;
  sat.per_rank.assign(window.rank_bound, 0);

  std::vector<Destabilizer> found;
  for (unsigned ri = 1; ri <= window.rank_bound; ++ri) {
    const Integer r(ri);
    const Integer c_lo = floor(Rational(beta0 * Rational(r))) + 1;
    const Integer c_hi = ceil(Rational(beta0 * Rational(r) + im_v)) - 1;
    for (Integer c = c_lo; c <= c_hi; ++c) {
      const Integer d = v.r * c - v.c * r;
      if (d == 0) continue;  // vertical wall, handled separately
      // C(s) - mu = (v.r s - v.s r)/(h d) - mu, strictly monotone in s
      const auto offset = [&](const Integer& s) -> Rational {
        return Rational(v.r * s - v.s * r) / (h * Rational(d)) - mu;
      };
      const auto side_ok = [&](const Integer& s) {
        return compare_with_signed_sqrt(offset(s), side, q) == side;
      };
      // side_ok is an up-set in s when offset and side move together
      const bool side_up = (sgn(d) > 0) == (side > 0);
      const Rational guess_r = (h * Rational(d) * mu + Rational(v.s * r)) / Rational(v.r);
      const Integer guess = floor(guess_r);

      std::optional<Integer> lo, hi;
      if (sgn(q) < 0) {
        // v^2 < 0: every center satisfies the side condition
      } else if (side_up)
        lo = lowest_true(side_ok, guess);
      else
        hi = lowest_true([&](const Integer& s) { return !side_ok(s); }, guess) - 1;

      if (window.require_subobject_square) {
        const Integer bound = floor(make_rational(cfg.h2 * c * c + 2, 2 * r));
        hi = hi ? std::min(*hi, bound) : bound;
      }
      const MukaiVector t_base{vh.r - r, vh.c - c, 0};
      const auto apply_quotient = [&] {
        // t^2 >= -2 with t.s = vh.s - s:  2 t.r s >= 2 t.r vh.s - 2 - h t.c^2
        const Integer rhs = 2 * t_base.r * vh.s - 2 - cfg.h2 * t_base.c * t_base.c;
        if (t_base.r > 0) {
          Integer b = ceil(make_rational(rhs, 2 * t_base.r));
          lo = lo ? std::max(*lo, b) : b;
        } else if (t_base.r < 0) {
          Integer b = floor(make_rational(rhs, 2 * t_base.r));
          hi = hi ? std::min(*hi, b) : b;
        } else if (rhs > 0) {
          lo = Integer(1);
          hi = Integer(0);
        }
      };
      if (window.require_quotient_square) apply_quotient();
      if (!lo || !hi) {
        apply_quotient();
        ++sat.quotient_bounded_cells;
      }
      if (!lo || !hi)
        throw DomainError("unbounded ch2 window at rank " + r.get_str() + ", c1 " + c.get_str());

      for (Integer s = *lo; s <= *hi; ++s) {
        MukaiVector w{r, c, s};
        auto wall = numerical_wall(cfg, v, w);
        if (!wall || wall->is_vertical()) continue;
        if (!side_constraint_check(cfg, v, wall->circle())) continue;
        if (!ray_intersection(wall->circle(), beta0)) continue;
        found.push_back({w, *wall});
        ++sat.per_rank[ri - 1];
      }
    }
  }

  // Each wall once: pair w with vh - w.
  std::map<MukaiVector, std::size_t> index;
  for (std::size_t i = 0; i < found.size(); ++i) index[found[i].w] = i;
  std::vector<bool> drop(found.size(), false);
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (drop[i]) continue;
    auto it = index.find(vh - found[i].w);
    if (it == index.end() || it->second == i || drop[it->second]) continue;
    const std::size_t j = it->second;
    // both have positive rank: keep the one with larger mu_Z just below the wall
    const Rational a2 = *ray_intersection(found[i].wall.circle(), beta0) / 2;
    const StabilityPoint below(beta0, a2);
    const bool keep_i = slope_compare(cfg, below, found[i].w, found[j].w) != std::strong_ordering::less;
    drop[keep_i ? j : i] = true;
  }
  for (std::size_t i = 0; i < found.size(); ++i)
    if (!drop[i]) result.candidates.push_back(std::move(found[i]));
  std::sort(result.candidates.begin(), result.candidates.end(),
            [](const Destabilizer& a, const Destabilizer& b) {
              const auto& ca = a.wall.circle();
              const auto& cb = b.wall.circle();
              if (ca.center != cb.center) return ca.center < cb.center;
              if (ca.radius2 != cb.radius2) return ca.radius2 < cb.radius2;
              return a.w < b.w;
            });

  unsigned run = 0;
  for (unsigned ri = 1; ri <= window.rank_bound; ++ri) {
    if (sat.per_rank[ri - 1] > 0) {
      sat.last_nonempty_rank = ri;
      run = 0;
    } else if (++run == 10 && !sat.first_empty_run) {
      sat.first_empty_run = ri - 9;
    }
  }
  return result;
}

MukaiVector decompose_class(const MukaiVector& v, const MukaiVector& w) { return v - w; }

}  // namespace k3walls
