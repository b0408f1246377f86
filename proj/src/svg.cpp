#include "k3walls/report.hpp"

#include <algorithm>
#include <sstream>

namespace k3walls {

namespace {

constexpr unsigned kDigits = 6;

// Coordinates are exact when rational; square roots are truncated toward
// zero at kDigits decimals before formatting.
std::string num(const Rational& x) { return to_decimal(x, kDigits); }

Rational root(const Rational& x2) {
  if (auto exact = exact_sqrt(x2)) return *exact;
  return sqrt_lower(x2, kDigits);
}

std::string header(const Integer& x, const Integer& y, const Integer& w, const Integer& h, const std::string& title) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << x << " " << y << " " << w << " " << h
      << "\" width=\"" << w << "\" height=\"" << h << "\">\n"
      << "<title>" << title << "</title>\n";
  return out.str();
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string text(const Rational& x, const Rational& y, const std::string& cls, const std::string& body) {
  return "<text class=\"" + cls + "\" x=\"" + num(x) + "\" y=\"" + num(y) + "\">" + escape(body) + "</text>\n";
}

std::string style_block(const SvgStyle& s, Integer scale) {
  const std::string stroke = num(make_rational(scale, 512));
  std::ostringstream out;
  out << "<style>\n"
      << "  .axis { stroke: #000000; stroke-width: " << stroke << "; }\n"
      << "  .ray { stroke: " << s.ray << "; stroke-width: " << stroke << "; stroke-dasharray: 4 4; fill: none; }\n"
      << "  .pos { stroke: " << s.positive << "; stroke-width: " << stroke << "; fill: none; }\n"
      << "  .divisorial { stroke: " << s.divisorial << "; stroke-width: " << stroke
      << "; stroke-dasharray: 8 4; fill: none; }\n"
      << "  .flopping { stroke: " << s.flopping << "; stroke-width: " << stroke
      << "; stroke-dasharray: 8 4; fill: none; }\n"
      << "  .numerical { stroke: " << s.numerical << "; stroke-width: " << stroke
      << "; stroke-dasharray: 2 6; fill: none; }\n"
      << "  .hole { fill: " << s.hole << "; }\n"
      << "  .ample { fill: " << s.hole << "; }\n"
      << "  .nef { fill: " << s.flopping << "; fill-opacity: 0.08; stroke: none; }\n"
      << "  .label { font-family: sans-serif; font-size: " << num(make_rational(scale, 32))
      << "px; text-anchor: middle; }\n"
      << "</style>\n";
  return out.str();
}

std::string wall_class(const WallEntry& w) {
  if (!w.counts_for_cones()) return "numerical";
  return w.type.kind == WallKind::Divisorial ? "divisorial" : "flopping";
}

std::string prime_label(std::size_t i, bool prime) {
  std::string s(1, static_cast<char>('a' + i % 26));
  return "(" + s + (prime ? "'" : "") + ")";
}

}  // namespace

std::string render_halfplane_svg(const RunReport& r) {
  const SvgStyle style;
  const Rational S(r.config.scale);
  const Integer margin = r.config.scale / 8;

  // Horizontal extent in beta, vertical extent in alpha (before scaling).
  Rational lo = make_rational(r.config.v.c, r.config.v.r), hi = lo, top = make_rational(1, 4);
  for (const auto& w : r.walls) {
    if (w.wall.is_vertical()) continue;
    const Rational R = root(w.wall.circle().radius2);
    lo = std::min(lo, Rational(w.wall.circle().center - R));
    hi = std::max(hi, Rational(w.wall.circle().center + R));
    top = std::max(top, R);
  }
  for (const auto& ray : r.rays) {
    lo = std::min(lo, ray.beta0);
    hi = std::max(hi, ray.beta0);
  }
  const Integer x0 = floor(Rational(lo * S)) - margin;
  const Integer x1 = ceil(Rational(hi * S)) + margin;
  const Integer y_top = ceil(Rational(top * S)) + margin;

  std::ostringstream out;
  out << header(x0, -y_top, x1 - x0, y_top + margin, "stability half-plane");
  out << "<desc>x = beta * " << r.config.scale << ", y = -alpha * " << r.config.scale
      << "; square roots truncated to " << kDigits << " decimals</desc>\n";
  out << style_block(style, r.config.scale);
  out << "<defs><clipPath id=\"upper\"><rect x=\"" << x0 << "\" y=\"" << -y_top << "\" width=\"" << x1 - x0
      << "\" height=\"" << y_top << "\"/></clipPath></defs>\n";

  out << "<g id=\"axes\">\n";
  out << "<line class=\"axis\" x1=\"" << x0 << "\" y1=\"0\" x2=\"" << x1 << "\" y2=\"0\"/>\n";
  out << "</g>\n";

  out << "<g id=\"rays\">\n";
  for (const auto& ray : r.rays) {
    const std::string x = num(ray.beta0 * S);
    out << "<line class=\"ray\" data-beta=\"" << to_string(ray.beta0) << "\" x1=\"" << x << "\" y1=\"0\" x2=\"" << x
        << "\" y2=\"" << -y_top << "\"/>\n";
    out << text(ray.beta0 * S, Rational(margin) / 2, "label", "β=" + to_string(ray.beta0));
  }
  out << "</g>\n";

  out << "<g id=\"walls\">\n";
  for (const auto& w : r.walls) {
    const std::string cls = "wall " + wall_class(w);
    const std::string witness = to_string(w.wall.witness);
    if (w.wall.is_vertical()) {
      const std::string x = num(std::get<VerticalWall>(w.wall.shape).beta * S);
      out << "<line class=\"" << cls << "\" data-witness=\"" << witness << "\" x1=\"" << x << "\" y1=\"0\" x2=\"" << x
          << "\" y2=\"" << -y_top << "\"/>\n";
    } else {
      const auto& c = w.wall.circle();
      out << "<circle class=\"" << cls << "\" data-witness=\"" << witness << "\" cx=\"" << num(c.center * S)
          << "\" cy=\"0\" r=\"" << num(root(Rational(c.radius2 * S * S))) << "\" clip-path=\"url(#upper)\"/>\n";
    }
  }
  out << "</g>\n";

  out << "<g id=\"holes\">\n";
  const Rational dot = S / 128;
  for (const auto& w : r.walls)
    for (const auto& h : w.wall.holes) {
      const Rational x = h.beta * S;
      const Rational y = root(Rational(h.alpha2 * S * S));
      if (x < Rational(x0) || x > Rational(x1)) continue;
      out << "<circle class=\"hole\" data-root=\"" << to_string(h.delta) << "\" cx=\"" << num(x) << "\" cy=\""
          << num(-y) << "\" r=\"" << num(dot) << "\"/>\n";
    }
  out << "</g>\n";

  // Chamber labels along each search ray: outermost region first.
  out << "<g id=\"chambers\">\n";
  for (const WallSide side : {WallSide::Left, WallSide::Right}) {
    const Side want = side == WallSide::Left ? Side::LeftOfVertical : Side::RightOfVertical;
    const auto ray = std::find_if(r.rays.begin(), r.rays.end(), [&](const RayEntry& e) { return e.side == want; });
    if (ray == r.rays.end()) continue;
    std::vector<Rational> alphas;  // crossing heights, descending
    for (const auto& w : r.walls) {
      if (w.side != side || !w.counts_for_cones()) continue;
      if (auto a2 = ray_intersection(w.wall.circle(), ray->beta0)) alphas.push_back(root(*a2));
    }
    std::sort(alphas.rbegin(), alphas.rend());
    const Rational x = ray->beta0 * S;
    const bool prime = side == WallSide::Right;
    const Rational first = alphas.empty() ? Rational(top / 2) : Rational((alphas.front() + top) / 2);
    out << text(x, -first * S, "label", prime_label(0, prime));
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      const Rational below = i + 1 < alphas.size() ? alphas[i + 1] : Rational(0);
      out << text(x, -((alphas[i] + below) / 2) * S, "label", prime_label(i + 1, prime));
    }
  }
  out << "</g>\n";
  out << "</svg>\n";
  return out.str();
}

namespace {

struct Direction {
  Rational x, y;  // e-plane endpoint before scaling, max(|x|,|y|) = 1
  std::string data;
};

Direction direction_of(const ConeEdge& e) {
  if (e.ray) {
    const Rational& a = e.ray->a;
    const Rational& b = e.ray->b;
    const Rational m = std::max(Rational(abs(a)), Rational(abs(b)));
    Integer l = a.get_den() * b.get_den() / gcd(a.get_den(), b.get_den());
    Integer p = a.get_num() * (l / a.get_den()), q = b.get_num() * (l / b.get_den());
    const Integer g = gcd(p, q);
    return {a / m, b / m, to_string(Integer(p / g)) + "," + to_string(Integer(q / g))};
  }
  const Rational t = root(e.slope.square);
  const std::string data = std::string("1,") + (e.slope.sign < 0 ? "-" : "") + "sqrt(" + to_string(e.slope.square) + ")";
  if (t <= 1) return {1, e.slope.sign < 0 ? Rational(-t) : t, data};
  const Rational inv = 1 / t;
  return {inv, Rational(e.slope.sign < 0 ? -1 : 1), data};
}

Direction direction_of(const NSRay& ray) { return direction_of(ConeEdge{slope_of(ray), ray}); }

}  // namespace

std::string render_ns_cone_svg(const RunReport& r) {
  const SvgStyle style;
  const Rational S(r.config.scale);
  const Rational E = S / 2;
  const Integer margin = r.config.scale / 8;
  const Integer extent = r.config.scale / 2;

  std::ostringstream out;
  out << header(-margin, -(extent + margin), extent + 2 * margin, 2 * (extent + margin), "positive cone in NS");
  out << "<desc>x = a, y = -b for a e1 + b e2, rays scaled to length " << extent << " in the max norm; square roots truncated to "
      << kDigits << " decimals</desc>\n";
  out << style_block(style, r.config.scale);

  if (!r.cones) {
    out << text(0, 0, "label", "no cone chart for v^2 = " + to_string(r.v_square));
    out << "</svg>\n";
    return out.str();
  }
  const ConeChart& c = *r.cones;

  auto line = [&](const Direction& d, const std::string& cls, const std::string& extra) {
    out << "<line class=\"" << cls << "\" data-dir=\"" << d.data << "\"" << extra << " x1=\"0\" y1=\"0\" x2=\""
        << num(d.x * E) << "\" y2=\"" << num(-d.y * E) << "\"/>\n";
  };

  out << "<g id=\"axes\">\n";
  out << "<line class=\"axis\" x1=\"0\" y1=\"0\" x2=\"" << extent << "\" y2=\"0\"/>\n";
  out << "<line class=\"axis\" x1=\"0\" y1=\"" << extent << "\" x2=\"0\" y2=\"" << -extent << "\"/>\n";
  out << text(E + Rational(margin) / 2, 0, "label", "e1");
  out << text(0, -E - Rational(margin) / 2, "label", "e2");
  out << "</g>\n";

  const Direction nef_lo = direction_of(c.nef[0]), nef_hi = direction_of(c.nef[1]);
  out << "<polygon class=\"nef\" points=\"0,0 " << num(nef_lo.x * E) << "," << num(-nef_lo.y * E) << " "
      << num(nef_hi.x * E) << "," << num(-nef_hi.y * E) << "\"/>\n";

  out << "<g id=\"positive\">\n";
  for (const auto& e : c.pos) line(direction_of(e), "pos", "");
  out << "</g>\n";

  out << "<g id=\"movable\">\n";
  for (std::size_t k = 0; k < 2; ++k)
    if (compare(c.mov[k].slope, c.pos[k].slope) != 0) line(direction_of(c.mov[k]), "divisorial", "");
  out << "</g>\n";

  out << "<g id=\"chamber-walls\">\n";
  for (const auto& w : c.chamber_walls) line(direction_of(w), "flopping", " data-class=\"" + to_string(w.ambient) + "\"");
  out << "</g>\n";

  const Direction a = direction_of(c.ample);
  out << "<g id=\"ample\">\n";
  out << "<circle class=\"ample\" data-dir=\"" << a.data << "\" data-class=\"" << to_string(c.ample.ambient) << "\" cx=\""
      << num(a.x * E) << "\" cy=\"" << num(-a.y * E) << "\" r=\"" << num(S / 128) << "\"/>\n";
  out << "</g>\n";

  out << "<g id=\"chambers\">\n";
  for (const auto& ch : c.chambers) {
    const Direction lo = direction_of(ch.lower), hi = direction_of(ch.upper);
    const Rational x = (lo.x + hi.x) / 2 * Rational(3, 4) * E;
    const Rational y = -(lo.y + hi.y) / 2 * Rational(3, 4) * E;
    out << text(x, y, "label", ch.label);
  }
  out << "</g>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace k3walls
