#include "k3walls/report.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace k3walls {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return trim(hash == std::string::npos ? line : line.substr(0, hash));
}

ConfigError line_error(std::size_t line, const std::string& msg) {
  return ConfigError("line " + std::to_string(line) + ": " + msg);
}

Integer parse_integer_value(const std::string& text) {
  const Rational q = parse_rational(text);
  if (!is_integer(q)) throw std::invalid_argument("expected an integer, got '" + text + "'");
  return q.get_num();
}

unsigned parse_unsigned(const std::string& text, unsigned max_value) {
  const Integer n = parse_integer_value(text);
  if (n < 0 || n > max_value)
    throw std::invalid_argument("expected an integer in [0, " + std::to_string(max_value) + "], got '" + text + "'");
  return static_cast<unsigned>(n.get_ui());
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  if (trim(text).empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  if (text.back() == ',') throw std::invalid_argument("trailing comma in '" + text + "'");
  return out;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{"h2", "v", "rays", "rank_bound", "annotations", "out", "scale"};
  return keys;
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

std::string rationals(const std::vector<Rational>& xs) {
  std::vector<std::string> parts;
  for (const auto& x : xs) parts.push_back(to_string(x));
  return join(parts, ",");
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::map<std::string, std::size_t> seen;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t n = i + 1;
    const std::string line = strip_comment(lines[i]);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw line_error(n, "expected key=value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!known_keys().count(key)) throw line_error(n, "unknown key '" + key + "'");
    if (seen.count(key)) throw line_error(n, "duplicate key '" + key + "'");
    seen[key] = n;
    try {
      if (key == "h2") {
        cfg.h2 = parse_integer_value(value);
        if (cfg.h2 < 2 || cfg.h2 % 2 != 0) throw std::invalid_argument("h2 must be even and >= 2, got " + value);
      } else if (key == "v") {
        cfg.v = parse_mukai(value);
        if (!is_primitive(cfg.v)) throw std::invalid_argument("v = " + value + " is not primitive");
        if (cfg.v.r <= 0) throw std::invalid_argument("v must have positive rank, got " + value);
      } else if (key == "rays") {
        cfg.rays = parse_rational_list(value);
      } else if (key == "rank_bound") {
        cfg.rank_bound = parse_unsigned(value, 10000);
      } else if (key == "annotations") {
        if (value.empty()) throw std::invalid_argument("empty annotations path");
        cfg.annotations = value;
      } else if (key == "out") {
        if (value.empty()) throw std::invalid_argument("empty output directory");
        cfg.out = value;
      } else if (key == "scale") {
        cfg.scale = parse_unsigned(value, 1000000);
        if (cfg.scale == 0) throw std::invalid_argument("scale must be positive");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw line_error(n, e.what());
    }
  }
  for (const char* required : {"h2", "v"})
    if (!seen.count(required)) throw ConfigError(std::string("missing required key '") + required + "'");

  const K3Config k3(cfg.h2);
  const Integer v2 = square(k3, cfg.v);
  if (v2 < -2) throw line_error(seen["v"], "v^2 = " + to_string(v2) + " < -2");
  const Rational mu = make_rational(cfg.v.c, cfg.v.r);

  if (seen.count("rays")) {
    std::set<Rational> distinct;
    for (const auto& beta : cfg.rays) {
      if (beta == mu) throw line_error(seen["rays"], "ray " + to_string(beta) + " lies on the vertical wall");
      if (!distinct.insert(beta).second) throw line_error(seen["rays"], "ray " + to_string(beta) + " given twice");
    }
  } else if (v2 >= 0) {
    const Rational q = q_invariant(k3, cfg.v);
    const auto root = exact_sqrt(q);
    if (sgn(q) == 0 || !root)
      throw ConfigError("missing key 'rays': default rays need a positive rational sqrt(Q), Q = " + to_string(q));
    cfg.rays = {mu - *root, mu + *root};
  }
  return cfg;
}

std::string apply_overrides(const std::string& text,
                            const std::vector<std::pair<std::string, std::string>>& overrides) {
  std::set<std::string> replaced;
  for (const auto& kv : overrides) replaced.insert(kv.first);
  std::string out;
  for (const auto& line : split_lines(text)) {
    const std::string body = strip_comment(line);
    const auto eq = body.find('=');
    if (eq != std::string::npos && replaced.count(trim(body.substr(0, eq)))) continue;
    out += line + "\n";
  }
  std::map<std::string, std::string> last;
  for (const auto& kv : overrides) last[kv.first] = kv.second;
  for (const auto& kv : overrides) {
    auto it = last.find(kv.first);
    if (it == last.end()) continue;
    out += it->first + "=" + it->second + "\n";
    last.erase(it);
  }
  return out;
}

std::string serialize(const RunConfig& cfg) {
  std::string out;
  out += "h2=" + to_string(cfg.h2) + "\n";
  out += "v=" + to_string(cfg.v) + "\n";
  out += "rays=" + rationals(cfg.rays) + "\n";
  out += "rank_bound=" + std::to_string(cfg.rank_bound) + "\n";
  if (cfg.annotations) out += "annotations=" + *cfg.annotations + "\n";
  out += "out=" + cfg.out + "\n";
  out += "scale=" + std::to_string(cfg.scale) + "\n";
  return out;
}

const WallAnnotation* AnnotationTable::find(const MukaiVector& witness) const {
  auto it = walls.find(witness);
  return it == walls.end() ? nullptr : &it->second;
}

AnnotationTable parse_annotations(const std::string& text) {
  AnnotationTable table;
  enum class Section { None, Gieseker, Wall } section = Section::None;
  WallAnnotation* current = nullptr;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t n = i + 1;
    const std::string line = strip_comment(lines[i]);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw line_error(n, "unterminated section header");
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (name == "gieseker") {
        section = Section::Gieseker;
      } else if (name.rfind("wall", 0) == 0) {
        MukaiVector w;
        try {
          w = parse_mukai(trim(name.substr(4)));
        } catch (const std::invalid_argument& e) {
          throw line_error(n, e.what());
        }
        if (table.walls.count(w)) throw line_error(n, "duplicate section for wall " + to_string(w));
        current = &table.walls[w];
        section = Section::Wall;
      } else {
        throw line_error(n, "unknown section '" + name + "'");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw line_error(n, "expected key=value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section == Section::Gieseker && key == "model") {
      table.gieseker_model = value;
    } else if (section == Section::Wall) {
      if (key == "name") {
        current->name = value;
      } else if (key == "actual") {
        if (value != "yes" && value != "no") throw line_error(n, "actual must be yes or no");
        current->actual = value == "yes";
      } else if (key == "model") {
        current->model = value;
      } else if (key == "description") {
        current->description = value;
      } else {
        throw line_error(n, "unknown wall key '" + key + "'");
      }
    } else {
      throw line_error(n, "key '" + key + "' outside a known section");
    }
  }
  return table;
}

std::string to_string(WallSide side) {
  switch (side) {
    case WallSide::Vertical: return "vertical";
    case WallSide::Left: return "left";
    case WallSide::Right: return "right";
  }
  return "?";
}

bool WallEntry::counts_for_cones() const {
  if (annotation && annotation->actual) return *annotation->actual;
  return type.kind != WallKind::FakeOrUnknown;
}

namespace {

Rational center_of(const WallShape& shape) {
  if (const auto* vw = std::get_if<VerticalWall>(&shape)) return vw->beta;
  return std::get<Semicircle>(shape).center;
}

Rational radius2_of(const WallShape& shape) {
  if (std::holds_alternative<VerticalWall>(shape)) return 0;
  return std::get<Semicircle>(shape).radius2;
}

template <class F>
auto with_context(const std::string& context, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InconsistencyError& e) {
    throw InconsistencyError(context + ": " + e.what());
  } catch (const DomainError& e) {
    throw DomainError(context + ": " + e.what());
  }
}

StabilityPoint choose_ample_point(const K3Config& k3, const MukaiVector& v, const std::vector<WallEntry>& walls) {
  const Rational beta = Rational(ceil(make_rational(v.c, v.r)) - 1);
  Rational alpha2 = 1;
  for (int step = 0; step < 256; ++step, alpha2 *= 2) {
    const StabilityPoint pt(beta, alpha2);
    if (!is_valid_point(k3, pt)) continue;
    bool above = true;
    for (const auto& w : walls) {
      if (w.side != WallSide::Left) continue;
      const auto a2 = ray_intersection(w.wall.circle(), beta);
      if (a2 && cmp(*a2, alpha2) >= 0) above = false;
    }
    if (above) return pt;
  }
  throw InconsistencyError("no Gieseker-chamber point found on beta = " + to_string(beta));
}

}  // namespace

RunReport run_pipeline(const RunConfig& cfg, const AnnotationTable& annotations) {
  RunReport report;
  report.config = cfg;
  const K3Config k3(cfg.h2);
  const MukaiVector& v = cfg.v;
  report.v_square = square(k3, v);
  report.q = q_invariant(k3, v);
  report.gieseker_model = annotations.gieseker_model.empty() ? "M[" + to_string(v) + "]" : annotations.gieseker_model;

  if (report.v_square < 0) {
    report.notes.push_back("v^2 = " + to_string(report.v_square) +
                           ": the moduli space is a single point and there are no walls");
    return report;
  }

  auto annotate = [&](WallEntry& entry) {
    if (const auto* a = annotations.find(entry.wall.witness)) entry.annotation = *a;
  };

  {
    WallEntry entry;
    entry.side = WallSide::Vertical;
    entry.wall = vertical_wall(v);
    annotate(entry);
    report.walls.push_back(std::move(entry));
  }

  if (cfg.rank_bound == 0) {
    report.notes.push_back("rank_bound = 0: no search performed");
  } else {
    report.search_performed = true;
    const Rational mu = make_rational(v.c, v.r);
    for (const auto& beta0 : cfg.rays) {
      const Side side = beta0 < mu ? Side::LeftOfVertical : Side::RightOfVertical;
      SearchWindow window{beta0, side, cfg.rank_bound};
      const SearchResult found = with_context("ray beta = " + to_string(beta0),
                                              [&] { return search_destabilizers(k3, v, window); });
      RayEntry ray{beta0, side, {}, found.saturation};
      for (const auto& d : found.candidates) {
        ray.candidates.push_back(d.w);
        const bool known = std::any_of(report.walls.begin(), report.walls.end(),
                                       [&](const WallEntry& e) { return e.wall.shape == d.wall.shape; });
        if (known) continue;
        WallEntry entry;
        entry.side = side == Side::LeftOfVertical ? WallSide::Left : WallSide::Right;
        entry.wall = d.wall;
        entry.crossing = std::make_pair(beta0, *ray_intersection(d.wall.circle(), beta0));
        annotate(entry);
        report.walls.push_back(std::move(entry));
      }
      report.rays.push_back(std::move(ray));
    }
  }

  std::sort(report.walls.begin(), report.walls.end(), [](const WallEntry& a, const WallEntry& b) {
    const Rational ca = center_of(a.wall.shape), cb = center_of(b.wall.shape);
    if (ca != cb) return ca < cb;
    return radius2_of(a.wall.shape) < radius2_of(b.wall.shape);
  });

  for (auto& entry : report.walls) {
    const std::string context = "wall W(" + to_string(entry.wall.witness) + ")";
    entry.wall.holes = with_context(context, [&] { return wall_holes(k3, entry.wall.shape); });
    entry.type = with_context(context, [&] { return classify_wall(k3, v, entry.wall.witness); });
  }

  if (report.v_square == 0) {
    report.notes.push_back("v^2 = 0: v-perp is degenerate and no cone chart is built");
    return report;
  }

  const NSBasis basis = orthogonal_basis(k3, v);
  std::vector<ClassifiedWall> classified;
  for (auto& entry : report.walls) {
    const std::string context = "wall W(" + to_string(entry.wall.witness) + ")";
    entry.image = with_context(context, [&] { return wall_image(k3, basis, v, entry.wall.witness); });
    const NSRay& image = *entry.image;
    report.notes.push_back("image of W(" + to_string(entry.wall.witness) + ") is R(" + to_string(image.ambient) +
                           "): <image, w> = " + to_string(mukai_pairing(k3, image.ambient, entry.wall.witness)) +
                           ", <image, v> = " + to_string(mukai_pairing(k3, image.ambient, v)));
    if (!entry.counts_for_cones()) continue;
    classified.push_back({entry.wall.witness, entry.type, image, entry.annotation ? entry.annotation->model : ""});
  }

  report.ample_point = choose_ample_point(k3, v, report.walls);
  report.cones = with_context("cone assembly", [&] {
    return assemble_cones(k3, v, classified, *report.ample_point, report.gieseker_model);
  });
  const NSRay& ample = report.cones->ample;
  report.notes.push_back("ample class at (beta, alpha^2) = (" + to_string(report.ample_point->beta) + ", " +
                         to_string(report.ample_point->alpha2) + ") is R+(" + to_string(ample.ambient) + ") = " +
                         to_string(ample.a) + " e1 + " + to_string(ample.b) + " e2");
  return report;
}

namespace {

std::string coords(const NSRay& ray) { return to_string(ray.a) + "," + to_string(ray.b); }

std::string edge_text(const ConeEdge& e) {
  std::string out = "slope " + to_string(e.slope);
  if (e.ray) out += " ray " + to_string(e.ray->ambient) + " coords " + coords(*e.ray);
  return out;
}

std::string witness_text(const Witness& w) {
  return to_string(w.u) + " " + to_string(w.role) + " <u,v>=" + to_string(w.pairing);
}

}  // namespace

std::string render_report(const RunReport& r) {
  std::ostringstream out;
  const auto kv = [&](const std::string& k, const std::string& v) { out << k << " = " << v << "\n"; };

  out << "[config]\n";
  kv("h2", to_string(r.config.h2));
  kv("v", to_string(r.config.v));
  kv("rays", rationals(r.config.rays));
  kv("rank_bound", std::to_string(r.config.rank_bound));
  kv("scale", std::to_string(r.config.scale));

  out << "\n[lattice]\n";
  kv("genus", to_string(K3Config(r.config.h2).genus()));
  kv("v_square", to_string(r.v_square));
  kv("slope", to_string(make_rational(r.config.v.c, r.config.v.r)));
  if (r.q) kv("q", to_string(*r.q));
  kv("gieseker_model", r.gieseker_model);

  for (std::size_t i = 0; i < r.walls.size(); ++i) {
    const WallEntry& w = r.walls[i];
    out << "\n[wall " << i + 1 << "]\n";
    kv("witness", to_string(w.wall.witness));
    kv("side", to_string(w.side));
    if (w.wall.is_vertical()) {
      kv("shape", "vertical");
      kv("beta", to_string(std::get<VerticalWall>(w.wall.shape).beta));
    } else {
      kv("shape", "semicircle");
      kv("center", to_string(w.wall.circle().center));
      kv("radius2", to_string(w.wall.circle().radius2));
    }
    if (w.crossing) kv("crossing", "beta " + to_string(w.crossing->first) + " alpha2 " + to_string(w.crossing->second));
    kv("quotient", to_string(decompose_class(r.config.v, w.wall.witness)));
    std::vector<std::string> holes;
    for (const auto& h : w.wall.holes)
      holes.push_back("(" + to_string(h.beta) + ", " + to_string(h.alpha2) + ", " + to_string(h.delta) + ")");
    kv("holes", holes.empty() ? "none" : join(holes, " "));
    kv("kind", to_string(w.type.kind));
    kv("divisorial", to_string(w.type.divisorial));
    kv("bouncing", yes_no(w.type.bouncing));
    kv("totally_semistable_flag", yes_no(w.type.totally_semistable_flag));
    const auto& lat = w.type.lattice;
    kv("lattice.basis", to_string(lat.basis[0]) + "; " + to_string(lat.basis[1]));
    kv("lattice.gram", to_string(lat.gram[0][0]) + "," + to_string(lat.gram[0][1]) + "; " +
                           to_string(lat.gram[1][0]) + "," + to_string(lat.gram[1][1]));
    std::vector<std::string> witnesses;
    for (const auto& x : w.type.witnesses) witnesses.push_back(witness_text(x));
    kv("witnesses", witnesses.empty() ? "none" : join(witnesses, "; "));
    if (w.image) {
      kv("image", to_string(w.image->ambient));
      kv("image.coords", coords(*w.image));
    }
    if (w.annotation) {
      if (!w.annotation->name.empty()) kv("annotation.name", w.annotation->name);
      kv("annotation.actual", w.annotation->actual ? yes_no(*w.annotation->actual) : "unknown");
      if (!w.annotation->model.empty()) kv("annotation.model", w.annotation->model);
      if (!w.annotation->description.empty()) kv("annotation.description", w.annotation->description);
    } else {
      kv("annotation.status", "numerical candidate");
    }
  }

  out << "\n[search]\n";
  kv("performed", yes_no(r.search_performed));
  for (const auto& ray : r.rays) {
    out << "\n[ray " << to_string(ray.beta0) << "]\n";
    kv("side", ray.side == Side::LeftOfVertical ? "left" : "right");
    std::vector<std::string> cands;
    for (const auto& c : ray.candidates) cands.push_back(to_string(c));
    kv("candidates", cands.empty() ? "none" : join(cands, "; "));
    const auto& s = ray.saturation;
    kv("saturation.rank_bound", std::to_string(s.rank_bound));
    std::vector<std::string> per;
    for (unsigned n : s.per_rank) per.push_back(std::to_string(n));
    kv("saturation.per_rank", join(per, ","));
    kv("saturation.last_nonempty_rank", s.last_nonempty_rank ? std::to_string(*s.last_nonempty_rank) : "none");
    kv("saturation.first_empty_run", s.first_empty_run ? std::to_string(*s.first_empty_run) : "none");
    kv("saturation.quotient_bounded_cells", std::to_string(s.quotient_bounded_cells));
  }

  if (r.cones) {
    const ConeChart& c = *r.cones;
    out << "\n[ns]\n";
    kv("e1", to_string(c.basis.e1));
    kv("e2", to_string(c.basis.e2));
    kv("gram", to_string(c.basis.e1_sq) + "," + to_string(c.basis.e2_sq));
    out << "\n[cones]\n";
    kv("pos.lower", edge_text(c.pos[0]));
    kv("pos.upper", edge_text(c.pos[1]));
    kv("mov.lower", edge_text(c.mov[0]));
    kv("mov.upper", edge_text(c.mov[1]));
    kv("nef.lower", edge_text(c.nef[0]));
    kv("nef.upper", edge_text(c.nef[1]));
    kv("ample.point", to_string(r.ample_point->beta) + "," + to_string(r.ample_point->alpha2));
    kv("ample.ray", to_string(c.ample.ambient));
    kv("ample.coords", coords(c.ample));
    for (const auto& w : c.chamber_walls) kv("chamber_wall", to_string(w.ambient) + " coords " + coords(w));
    for (const auto& f : c.reflections)
      kv("reflection", to_string(f[0]) + " in " + to_string(f[1]) + " -> " + to_string(f[2]));
    for (const auto& ch : c.chambers)
      kv("chamber " + ch.label, "slopes [" + to_string(ch.lower.slope) + ", " + to_string(ch.upper.slope) +
                                    "] model " + ch.model + (ch.nef ? " nef" : ""));
  }

  out << "\n[notes]\n";
  for (const auto& n : r.notes) out << "- " << n << "\n";
  return out.str();
}

std::string render_walls_summary(const RunReport& r) {
  std::ostringstream out;
  out << "v = (" << to_string(r.config.v) << "), v^2 = " << to_string(r.v_square) << ", H^2 = " << to_string(r.config.h2)
      << "\n";
  for (const auto& w : r.walls) {
    out << "  W(" << to_string(w.wall.witness) << ") ";
    if (w.wall.is_vertical())
      out << "vertical beta = " << to_string(std::get<VerticalWall>(w.wall.shape).beta);
    else
      out << "center " << to_string(w.wall.circle().center) << " radius^2 " << to_string(w.wall.circle().radius2);
    out << "  " << to_string(w.type.kind);
    if (w.type.kind == WallKind::Divisorial) out << " (" << to_string(w.type.divisorial) << ")";
    out << ", holes " << w.wall.holes.size();
    if (w.annotation && !w.annotation->name.empty()) out << "  [" << w.annotation->name << "]";
    if (w.annotation && w.annotation->actual && !*w.annotation->actual) out << " not an actual wall";
    out << "\n";
  }
  for (const auto& ray : r.rays) {
    out << "  ray beta = " << to_string(ray.beta0) << ": " << ray.candidates.size() << " candidate(s), last nonempty rank "
        << (ray.saturation.last_nonempty_rank ? std::to_string(*ray.saturation.last_nonempty_rank) : "none") << "\n";
  }
  for (const auto& n : r.notes)
    if (n.rfind("image of", 0) != 0 && n.rfind("ample class", 0) != 0) out << "  note: " << n << "\n";
  return out.str();
}

std::string render_cones_summary(const RunReport& r) {
  std::ostringstream out;
  if (!r.cones) {
    out << "no cone chart\n";
    for (const auto& n : r.notes) out << "  note: " << n << "\n";
    return out.str();
  }
  const ConeChart& c = *r.cones;
  out << "e1 = (" << to_string(c.basis.e1) << "), e2 = (" << to_string(c.basis.e2) << "), gram (" << to_string(c.basis.e1_sq)
      << ", " << to_string(c.basis.e2_sq) << ")\n";
  out << "  Pos slopes [" << to_string(c.pos[0].slope) << ", " << to_string(c.pos[1].slope) << "]\n";
  out << "  Mov slopes [" << to_string(c.mov[0].slope) << ", " << to_string(c.mov[1].slope) << "]\n";
  out << "  Nef slopes [" << to_string(c.nef[0].slope) << ", " << to_string(c.nef[1].slope) << "]\n";
  out << "  ample " << to_string(c.ample.a) << " e1 + " << to_string(c.ample.b) << " e2\n";
  for (const auto& ch : c.chambers)
    out << "  chamber " << ch.label << " [" << to_string(ch.lower.slope) << ", " << to_string(ch.upper.slope) << "] "
        << ch.model << (ch.nef ? " (nef)" : "") << "\n";
  return out.str();
}

}  // namespace k3walls
