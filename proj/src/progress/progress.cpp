#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "birs/error.hpp"
#include "birs/progress.hpp"
#include "birs/textfmt.hpp"

namespace birs::progress {

using building::BuildingModel;
using building::LandmarkClass;

Date parse_date(std::string_view text) {
  auto bad = [&] { return Error("BadDate", fmt::format("'{}' is not a YYYY-MM-DD date", text)); };
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') throw bad();
  auto num = [&](std::size_t from, std::size_t len) {
    int v = 0;
    for (std::size_t i = from; i < from + len; ++i) {
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw bad();
      v = v * 10 + (text[i] - '0');
    }
    return v;
  };
  Date d{std::chrono::year{num(0, 4)}, std::chrono::month{static_cast<unsigned>(num(5, 2))},
         std::chrono::day{static_cast<unsigned>(num(8, 2))}};
  if (!d.ok()) throw bad();
  return d;
}

std::string format_date(const Date& d) {
  return fmt::format("{:04}-{:02}-{:02}", static_cast<int>(d.year()), static_cast<unsigned>(d.month()),
                     static_cast<unsigned>(d.day()));
}

std::optional<Date> Schedule::date_of(std::string_view global_id) const {
  auto it = entries.find(global_id);
  if (it == entries.end()) return std::nullopt;
  return it->second;
}

Schedule load_schedule(std::string_view document) {
  Schedule s;
  int lineno = 0;
  std::size_t start = 0;
  while (start < document.size()) {
    auto end = document.find('\n', start);
    if (end == std::string_view::npos) end = document.size();
    auto line = text::trim(document.substr(start, end - start));
    start = end + 1;
    ++lineno;
    if (line.empty() || line.front() == '#') continue;
    auto comma = line.find(',');
    if (comma == std::string_view::npos) {
      throw Error("SyntaxError", fmt::format("line {}: expected 'global_id,YYYY-MM-DD'", lineno));
    }
    auto gid = text::trim(line.substr(0, comma));
    auto date_text = text::trim(line.substr(comma + 1));
    if (gid.empty()) throw Error("SyntaxError", fmt::format("line {}: empty element id", lineno));
    Date d;
    try {
      d = parse_date(date_text);
    } catch (const Error& e) {
      throw Error("BadDate", fmt::format("line {}: {}", lineno, e.what()));
    }
    if (!s.entries.emplace(std::string(gid), d).second) {
      throw Error("DuplicateElement", fmt::format("line {}: {} is scheduled twice", lineno, gid));
    }
  }
  return s;
}

Schedule read_schedule_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("IoError", fmt::format("cannot open {}", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_schedule(ss.str());
}

std::set<std::string> not_yet_due(const BuildingModel& model, const Schedule& schedule, const Date& as_of) {
  std::set<std::string> out;
  for (const auto& l : model.landmarks) {
    if (auto d = schedule.date_of(l.global_id); d && *d > as_of) out.insert(l.global_id);
  }
  return out;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::AheadOfSchedule: return "AheadOfSchedule";
    case Verdict::Anomaly: return "Anomaly";
    case Verdict::MissingPlanned: return "MissingPlanned";
  }
  return "?";
}

double overlap_fraction(const grid::GridSpec& spec, const grid::DiffCluster& cluster, const Polygon2D& footprint) {
  if (cluster.cells.empty()) return 0.0;
  std::size_t hit = 0;
  for (const auto& cell : cluster.cells) {
    if (footprint.contains(spec.cell_center(cell.c, cell.r))) ++hit;
  }
  return static_cast<double>(hit) / static_cast<double>(cluster.cells.size());
}

namespace {

bool overlaps(const BBox& a, const BBox& b) {
  return a.valid && b.valid && a.xmin <= b.xmax && b.xmin <= a.xmax && a.ymin <= b.ymax && b.ymin <= a.ymax;
}

struct Match {
  const building::Landmark* element = nullptr;
  double overlap = 0.0;
};

template <typename Pred>
Match best_match(const grid::GridSpec& spec, const grid::DiffCluster& cl, const BuildingModel& model, Pred&& eligible) {
  Match best;
  for (const auto& l : model.landmarks) {
    if (l.ifc_class == LandmarkClass::Door || !eligible(l)) continue;
    if (!overlaps(cl.bbox, l.footprint.bbox())) continue;
    double f = overlap_fraction(spec, cl, l.footprint);
    if (f > best.overlap || (f == best.overlap && best.element && l.global_id < best.element->global_id)) {
      if (f > 0.0) best = {&l, f};
    }
  }
  return best;
}

std::string storey_name(const BuildingModel& model, Point2 p) {
  auto room = topo::room_of_point(model, p);
  if (!room) return {};
  const auto* s = model.find_space(*room);
  if (!s || s->storey.empty()) return {};
  const auto* st = model.find_storey(s->storey);
  return st ? st->name : s->storey;
}

}  // namespace

std::vector<Finding> classify_clusters(const grid::GridSpec& spec, const std::vector<grid::DiffCluster>& clusters,
                                       const BuildingModel& model, const topo::TopoMap& topo,
                                       const Schedule& schedule, const Date& as_of, const ProgressOptions& options) {
  std::vector<Finding> out;
  for (const auto& cl : clusters) {
    Finding f;
    f.cluster = cl;
    f.storey = storey_name(model, cl.centroid);
    if (cl.kind == grid::DiffKind::Extra) {
      Match m = best_match(spec, cl, model, [&](const building::Landmark& l) {
        return schedule.date_of(l.global_id).has_value();
      });
      if (m.element && m.overlap >= options.match_threshold) {
        if (*schedule.date_of(m.element->global_id) <= as_of) continue;  // expected by now
        f.verdict = Verdict::AheadOfSchedule;
        f.element = m.element->global_id;
        f.matched_overlap = m.overlap;
      } else {
        f.verdict = Verdict::Anomaly;
        f.matched_overlap = m.overlap;
        try {
          f.nearest_office = nearest_office(topo, model, cl.centroid, options.office_tag);
        } catch (const Error&) {
          // Outside every room or no reachable office: the finding stands alone.
        }
      }
    } else if (cl.kind == grid::DiffKind::Missing) {
      Match m = best_match(spec, cl, model, [](const building::Landmark&) { return true; });
      if (!m.element || m.overlap < options.match_threshold) continue;
      auto due = schedule.date_of(m.element->global_id);
      if (due && *due > as_of) continue;
      f.verdict = Verdict::MissingPlanned;
      f.element = m.element->global_id;
      f.matched_overlap = m.overlap;
    } else {
      continue;
    }
    out.push_back(std::move(f));
  }
  return out;
}

OfficeRoute nearest_office(const topo::TopoMap& topo, const BuildingModel& model, Point2 from, std::string_view tag) {
  auto room = topo::room_of_point(model, from);
  if (!room || !topo.find(*room)) {
    throw Error("PointOutsideBuilding",
                fmt::format("({}, {}) is not inside any room", text::fixed(from.x, 3), text::fixed(from.y, 3)));
  }
  std::vector<const topo::TopoNode*> tagged;
  for (const auto& n : topo.nodes) {
    if (std::find(n.function_tags.begin(), n.function_tags.end(), tag) != n.function_tags.end()) tagged.push_back(&n);
  }
  if (tagged.empty()) throw Error("NoTaggedSpace", fmt::format("no room is tagged '{}'", tag));

  std::optional<OfficeRoute> best;
  for (const auto* n : tagged) {  // already in space-id order
    topo::Route r;
    try {
      r = topo::plan_path(topo, *room, n->space_id);
    } catch (const Error& e) {
      if (e.code() == "NoRoute") continue;
      throw;
    }
    if (!best || r.total_cost < best->route.total_cost - 1e-9 * std::max(1.0, r.total_cost)) {
      best = OfficeRoute{n->space_id, std::move(r)};
    }
  }
  if (!best) throw Error("NoRoute", fmt::format("no room tagged '{}' is reachable from {}", tag, *room));
  return *best;
}

std::string write_findings(const topo::TopoMap& topo, const std::vector<Finding>& findings) {
  std::string out = fmt::format("FINDINGS {}\n", findings.size());
  for (const auto& f : findings) {
    const auto& c = f.cluster;
    out += fmt::format("FINDING {} {} {} element={} overlap={} area={} centroid={},{} storey={}\n", c.id,
                       grid::to_string(c.kind), to_string(f.verdict), f.element ? *f.element : "-",
                       text::fixed(f.matched_overlap, 4), text::fixed(c.area, 4), text::fixed(c.centroid.x, 4),
                       text::fixed(c.centroid.y, 4), text::quoted(f.storey));
    if (f.nearest_office) {
      const auto* n = topo.find(f.nearest_office->space_id);
      out += fmt::format("  OFFICE {} cost={} {}\n", f.nearest_office->space_id,
                         text::fixed(f.nearest_office->route.total_cost, 4), text::quoted(n ? n->long_name : ""));
      std::string nodes;
      for (const auto& id : f.nearest_office->route.nodes) {
        const auto* rn = topo.find(id);
        nodes += fmt::format(" {}", text::quoted(rn ? rn->long_name : id));
      }
      out += fmt::format("  ROUTE{}\n", nodes);
    }
  }
  return out;
}

}  // namespace birs::progress
