#include "cornerlab/checkpoint.hpp"

#include <fstream>
#include <sstream>

#include "cornerlab/error.hpp"
#include "cornerlab/point_set.hpp"

namespace cornerlab {

using nlohmann::json;

Domain Checkpoint::domain() const {
  return domain_kind == DomainKind::PrimePlane ? Domain::prime_plane(domain_size)
                                               : Domain::integer_grid(domain_size);
}

std::string mask_to_hex(const Domain& domain, std::uint64_t mask) {
  PointSet s(domain);
  for (std::size_t i = 0; i < domain.point_count() && i < 64; ++i) {
    if ((mask >> i) & 1U) s.insert_index(i);
  }
  return s.to_hex();
}

std::uint64_t mask_from_hex(const Domain& domain, const std::string& hex) {
  if (domain.point_count() > 64) throw Error(ErrorCode::InvalidArgument, "mask domains hold at most 64 points");
  const PointSet s = PointSet::from_hex(domain, hex);
  std::uint64_t mask = 0;
  s.for_each_index([&](std::size_t i) { mask |= std::uint64_t{1} << i; });
  return mask;
}

json to_json(const Checkpoint& cp) {
  const Domain d = cp.domain();
  json doc;
  doc["format"] = "cornerlab-checkpoint";
  doc["version"] = Checkpoint::kVersion;
  doc["problem"] = cp.problem;
  doc["domain"] = {{"kind", d.name()}, {"size", d.size()}};
  doc["kind"] = cp.pattern.empty() ? to_string(cp.kind) : "pattern";
  doc["orientation"] = to_string(cp.orientation);
  if (!cp.pattern.empty()) {
    json mats = json::array();
    for (const auto& m : cp.pattern) mats.push_back({m.a, m.b, m.c, m.d});
    doc["pattern"] = mats;
  }
  doc["seed"] = cp.seed;
  doc["use_symmetry"] = cp.use_symmetry;
  doc["nodes_explored"] = cp.nodes_explored;
  doc["best_set"] = cp.best ? json(mask_to_hex(d, *cp.best)) : json(nullptr);
  json frontier = json::array();
  for (const auto& n : cp.frontier) frontier.push_back({{"in", mask_to_hex(d, n.in)}, {"out", mask_to_hex(d, n.out)}});
  doc["frontier"] = frontier;
  return doc;
}

namespace {

[[noreturn]] void corrupt(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::CorruptCheckpoint, "field '" + field + "': " + why);
}

const json& field(const json& doc, const std::string& name) {
  if (!doc.is_object() || !doc.contains(name)) corrupt(name, "missing");
  return doc.at(name);
}

template <class T>
T get_as(const json& doc, const std::string& name) {
  try {
    return field(doc, name).get<T>();
  } catch (const json::exception& e) {
    corrupt(name, e.what());
  }
}

}  // namespace

Checkpoint checkpoint_from_json(const json& doc) {
  if (get_as<std::string>(doc, "format") != "cornerlab-checkpoint") corrupt("format", "not a cornerlab checkpoint");
  if (get_as<int>(doc, "version") != Checkpoint::kVersion) corrupt("version", "unsupported version");
  Checkpoint cp;
  cp.problem = get_as<std::string>(doc, "problem");
  if (cp.problem != "min_saturated" && cp.problem != "max_config_free") corrupt("problem", "unknown problem");
  const json& dom = field(doc, "domain");
  const auto dkind = get_as<std::string>(dom, "kind");
  if (dkind == "prime_plane") {
    cp.domain_kind = DomainKind::PrimePlane;
  } else if (dkind == "integer_grid") {
    cp.domain_kind = DomainKind::IntegerGrid;
  } else {
    corrupt("domain.kind", "unknown domain kind");
  }
  cp.domain_size = get_as<std::int64_t>(dom, "size");
  Domain d = Domain::integer_grid(1);
  try {
    d = cp.domain();
  } catch (const Error& e) {
    corrupt("domain.size", e.what());
  }
  const auto kind = get_as<std::string>(doc, "kind");
  if (kind == "corner") {
    cp.kind = ConfigKind::Corner;
  } else if (kind == "square") {
    cp.kind = ConfigKind::Square;
  } else if (kind == "pattern") {
    for (const auto& m : field(doc, "pattern")) {
      if (!m.is_array() || m.size() != 4) corrupt("pattern", "matrices are [a, b, c, d]");
      try {
        cp.pattern.push_back({m[0].get<std::int64_t>(), m[1].get<std::int64_t>(), m[2].get<std::int64_t>(),
                              m[3].get<std::int64_t>()});
      } catch (const json::exception& e) {
        corrupt("pattern", e.what());
      }
    }
    if (cp.pattern.empty()) corrupt("pattern", "empty");
  } else {
    corrupt("kind", "unknown kind");
  }
  const auto orientation = get_as<std::string>(doc, "orientation");
  if (orientation != "tilted" && orientation != "axis") corrupt("orientation", "unknown orientation");
  cp.orientation = orientation == "tilted" ? Orientation::Tilted : Orientation::AxisParallel;
  cp.seed = get_as<std::uint64_t>(doc, "seed");
  cp.use_symmetry = get_as<bool>(doc, "use_symmetry");
  cp.nodes_explored = get_as<std::uint64_t>(doc, "nodes_explored");
  auto hex = [&](const json& value, const std::string& name) {
    if (!value.is_string()) corrupt(name, "expected hex string");
    try {
      return mask_from_hex(d, value.get<std::string>());
    } catch (const Error& e) {
      corrupt(name, e.what());
    }
  };
  const json& best = field(doc, "best_set");
  if (!best.is_null()) cp.best = hex(best, "best_set");
  const json& frontier = field(doc, "frontier");
  if (!frontier.is_array()) corrupt("frontier", "expected array");
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    const std::string name = "frontier[" + std::to_string(i) + "]";
    cp.frontier.push_back({hex(field(frontier[i], "in"), name + ".in"), hex(field(frontier[i], "out"), name + ".out")});
  }
  return cp;
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    out << to_json(checkpoint).dump(2) << '\n';
    if (!out) throw Error(ErrorCode::Io, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::CorruptCheckpoint, path.string() + ": " + e.what());
  }
  return checkpoint_from_json(doc);
}

}  // namespace cornerlab
