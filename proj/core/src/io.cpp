#include "ricciforge/io.hpp"

#include <fstream>
#include <sstream>

namespace ricciforge::io {

using nlohmann::json;

namespace {

template <class T>
T get(const json& j, const char* key) {
  if (!j.contains(key)) throw FormatError(std::string("chart file lacks \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad value for \"") + key + "\": " + e.what());
  }
}

json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

GridChart ChartFile::chart() const {
  if (!two_d || grid.dim() != 2) throw FormatError("chart file is not two-dimensional");
  const Axis& ax = grid.axis(0);
  const Axis& ay = grid.axis(1);
  return GridChart(ax.count, ay.count, ax.spacing, ay.spacing, ax.origin, ay.origin, ax.periodic, ay.periodic,
                   std::set<Edge>(edges.begin(), edges.end()));
}

const std::vector<double>& ChartFile::field(const std::string& name) const {
  auto it = fields.find(name);
  if (it == fields.end()) throw FormatError("chart file has no field \"" + name + "\"");
  return it->second;
}

ChartFile chart_file(const GridChart& chart) {
  ChartFile f;
  f.grid = chart.grid();
  f.edges.assign(chart.boundary_edges().begin(), chart.boundary_edges().end());
  return f;
}

ChartFile chart_file(const GridN& grid) {
  ChartFile f;
  f.grid = grid;
  f.two_d = false;
  return f;
}

ChartFile parse_chart(const json& j) {
  if (!j.is_object()) throw FormatError("chart file must hold a JSON object");
  ChartFile f;
  f.two_d = !j.contains("dims");
  std::vector<Axis> axes;
  std::vector<Face> faces;
  if (f.two_d) {
    axes.push_back({get<int>(j, "nx"), get<double>(j, "hx"), get<double>(j, "x0"), get<bool>(j, "periodic_x")});
    axes.push_back({get<int>(j, "ny"), get<double>(j, "hy"), get<double>(j, "y0"), get<bool>(j, "periodic_y")});
    for (const auto& name : get<std::vector<std::string>>(j, "boundary_edges")) {
      try {
        f.edges.push_back(edge_from_string(name));
      } catch (const Error& e) {
        throw FormatError(e.what());
      }
      faces.push_back(edge_face(f.edges.back()));
    }
  } else {
    const auto dims = get<std::vector<int>>(j, "dims");
    const auto spacing = get<std::vector<double>>(j, "spacing");
    const auto origin = get<std::vector<double>>(j, "origin");
    const auto periodic = get<std::vector<bool>>(j, "periodic");
    if (spacing.size() != dims.size() || origin.size() != dims.size() || periodic.size() != dims.size())
      throw FormatError("dims, spacing, origin and periodic must have equal lengths");
    for (std::size_t a = 0; a < dims.size(); ++a) axes.push_back({dims[a], spacing[a], origin[a], periodic[a]});
    for (const auto& name : get<std::vector<std::string>>(j, "boundary_faces")) {
      try {
        faces.push_back(face_from_string(name));
      } catch (const Error& e) {
        throw FormatError(e.what());
      }
    }
  }
  for (const auto& a : axes)
    if (a.count < 1 || !(a.spacing > 0)) throw FormatError("axis needs a positive count and spacing");
  f.grid = GridN(axes, faces);
  const auto& fields = j.contains("fields") ? j.at("fields") : json::object();
  if (!fields.is_object()) throw FormatError("\"fields\" must be an object");
  for (const auto& [name, values] : fields.items()) {
    std::vector<double> v;
    try {
      v = values.get<std::vector<double>>();
    } catch (const json::exception&) {
      throw FormatError("field \"" + name + "\" must be an array of numbers");
    }
    if (v.size() != f.grid.size())
      throw FormatError("field \"" + name + "\" has " + std::to_string(v.size()) + " samples, grid has " +
                        std::to_string(f.grid.size()));
    f.fields.emplace(name, std::move(v));
  }
  return f;
}

json to_json(const ChartFile& f) {
  json j;
  if (f.two_d) {
    const GridChart c = f.chart();
    j["nx"] = c.nx();
    j["ny"] = c.ny();
    j["hx"] = c.hx();
    j["hy"] = c.hy();
    j["x0"] = c.x0();
    j["y0"] = c.y0();
    j["periodic_x"] = c.periodic_x();
    j["periodic_y"] = c.periodic_y();
    j["boundary_edges"] = json::array();
    for (Edge e : f.edges) j["boundary_edges"].push_back(to_string(e));
  } else {
    json dims = json::array(), spacing = json::array(), origin = json::array(), periodic = json::array();
    for (const auto& a : f.grid.axes()) {
      dims.push_back(a.count);
      spacing.push_back(a.spacing);
      origin.push_back(a.origin);
      periodic.push_back(a.periodic);
    }
    j["dims"] = dims;
    j["spacing"] = spacing;
    j["origin"] = origin;
    j["periodic"] = periodic;
    j["boundary_faces"] = json::array();
    for (Face face : f.grid.physical_faces()) j["boundary_faces"].push_back(to_string(face));
  }
  j["fields"] = json::object();
  for (const auto& [name, values] : f.fields) j["fields"][name] = values;
  return j;
}

std::string dump(const json& j) { return j.dump() + "\n"; }

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void save_json(const json& j, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << dump(j);
  if (!out) throw FormatError("write failed: " + path.string());
}

ChartFile load_chart(const std::filesystem::path& path) { return parse_chart(load_json(path)); }
void save_chart(const ChartFile& f, const std::filesystem::path& path) { save_json(to_json(f), path); }

std::filesystem::path sidecar_path(const std::filesystem::path& chart_path) {
  return chart_path.string() + ".meta.json";
}

ConformalMetric2D conformal_metric(const ChartFile& f) {
  return ConformalMetric2D(ScalarField::sampled(f.chart(), f.field("u")));
}

void put_scalar(ChartFile& f, const std::string& name, const ScalarField& s) {
  if (!(s.chart().grid() == f.grid)) throw ChartMismatch("put_scalar: field lives on another chart");
  f.fields[name].assign(s.values().begin(), s.values().end());
}

void put_tensor(ChartFile& f, const std::string& prefix, const SymTensorFieldN& t) {
  if (!(t.grid().axes() == f.grid.axes())) throw ChartMismatch("put_tensor: field lives on another grid");
  const int n = t.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const auto c = t.component(i, j);
      f.fields[component_key(prefix, i, j)].assign(c.begin(), c.end());
    }
}

bool has_tensor(const ChartFile& f, const std::string& prefix, int n) {
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (!f.has(component_key(prefix, i, j))) return false;
  return true;
}

SymTensorFieldN tensor(const ChartFile& f, const std::string& prefix) {
  const int n = f.grid.dim();
  std::vector<std::vector<double>> comps(sym_count(n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) comps[sym_index(n, i, j)] = f.field(component_key(prefix, i, j));
  return SymTensorFieldN::sampled(f.grid, std::move(comps));
}

json to_json(const SpaceFormParams& p) {
  json j;
  j["c"] = p.c;
  j["H"] = p.H;
  j["boundary"] = json::object();
  for (const auto& [label, rec] : p.boundary) j["boundary"][label] = {{"b", rec.b}, {"sign", rec.sign}, {"alpha", rec.alpha}};
  return j;
}

SpaceFormParams parse_params(const json& j) {
  if (!j.is_object()) throw FormatError("parameters must be a JSON object");
  SpaceFormParams p;
  p.c = get<double>(j, "c");
  p.H = get<double>(j, "H");
  if (j.contains("boundary")) {
    if (!j.at("boundary").is_object()) throw FormatError("\"boundary\" must be an object");
    for (const auto& [label, rec] : j.at("boundary").items()) {
      BoundaryRecord r;
      r.b = get<double>(rec, "b");
      if (rec.contains("sign")) r.sign = get<int>(rec, "sign");
      if (rec.contains("alpha")) r.alpha = get<double>(rec, "alpha");
      p.boundary[label] = r;
    }
  }
  return p;
}

json to_json(const ResidualReport& r) {
  json grid;
  grid["dims"] = r.grid.dims;
  grid["spacing"] = r.grid.spacing;
  json j;
  j["check"] = r.check;
  j["sup"] = number(r.sup);
  j["l2"] = number(r.l2);
  j["excluded"] = r.excluded;
  j["total"] = r.total;
  j["tol"] = number(r.tol);
  j["pass"] = r.status != Status::failed;
  j["status"] = to_string(r.status);
  j["grid"] = grid;
  j["mode"] = r.mode;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

json to_json(const ReportBundle& b) {
  json j;
  j["status"] = to_string(b.status());
  j["pass"] = b.status() != Status::failed;
  j["reports"] = json::array();
  for (const auto& r : b.reports) j["reports"].push_back(to_json(r));
  return j;
}

std::string residual_csv(const ReportBundle& b) {
  std::ostringstream out;
  out.precision(17);
  out << "check,index,residual,masked\n";
  for (const auto& r : b.reports)
    for (std::size_t i = 0; i < r.residual.size(); ++i)
      out << r.check << ',' << i << ',' << r.residual[i] << ',' << (i < r.mask.size() ? int(r.mask[i]) : 0) << '\n';
  return out.str();
}

}  // namespace ricciforge::io
