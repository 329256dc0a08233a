#pragma once

// File formats.
//
// Fields, generators and isotopies are stored as a JSON manifest plus a raw
// little-endian float64 payload in row-major order (last axis fastest):
//   kind "scalar"     payload: P values
//   kind "oneform"    payload: 2n components of P values
//   kind "vector"     payload: 2n components of P values
//   kind "generator"  payload: U_t for each sample; harmonic coefficients in the manifest
//   kind "isotopy"    payload: displacements then velocities, 2n x P per sample
// Analytic generators can instead be described by a small JSON description (see
// `analytic_from_json`), sampled on the configured grid.

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "symtorus/builders.hpp"
#include "symtorus/flows.hpp"

namespace symtorus::io {

using json = nlohmann::json;
namespace fs = std::filesystem;

inline void write_f64(std::ofstream& os, const std::vector<double>& v) {
  if constexpr (std::endian::native == std::endian::little) {
    os.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
  } else {
    for (double d : v) {
      auto bits = std::bit_cast<std::uint64_t>(d);
      char bytes[8];
      for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
      os.write(bytes, 8);
    }
  }
}

inline void read_f64(std::ifstream& is, std::vector<double>& v) {
  if constexpr (std::endian::native == std::endian::little) {
    is.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
  } else {
    for (double& d : v) {
      unsigned char bytes[8];
      is.read(reinterpret_cast<char*>(bytes), 8);
      std::uint64_t bits = 0;
      for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
      d = std::bit_cast<double>(bits);
    }
  }
  if (!is) throw Error(ErrorCode::Io, "payload is shorter than the manifest declares");
}

inline json read_json(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::Io, "cannot open " + path.string());
  try {
    return json::parse(is);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, path.string() + ": " + e.what());
  }
}

inline void write_json(const fs::path& path, const json& j) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorCode::Io, "cannot write " + path.string());
  os << j.dump(2) << '\n';
}

inline fs::path payload_path(const fs::path& manifest) {
  fs::path p = manifest;
  p.replace_extension(".bin");
  return p;
}

namespace detail {

inline Grid grid_from(const json& m) {
  try {
    const int dim = m.at("dim").get<int>();
    require(dim >= 2 && dim % 2 == 0, ErrorCode::Parse, "manifest dim must be a positive even number");
    Grid g{dim / 2, m.at("grid_size").get<int>()};
    g.validate();
    return g;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("manifest: ") + e.what());
  }
}

inline json manifest(const std::string& kind, const Grid& g, std::size_t components, std::size_t samples, double dt,
                     const fs::path& payload) {
  return json{{"format", "symtorus"},
              {"kind", kind},
              {"dim", g.dim()},
              {"grid_size", g.N},
              {"components", components},
              {"samples", samples},
              {"dt", dt},
              {"payload", payload.filename().string()},
              {"encoding", "float64-le"}};
}

inline std::ofstream open_payload(const fs::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::Io, "cannot write " + path.string());
  return os;
}

inline std::ifstream open_payload(const fs::path& manifest_path, const json& m) {
  fs::path p = manifest_path.parent_path() / m.value("payload", payload_path(manifest_path).filename().string());
  std::ifstream is(p, std::ios::binary);
  if (!is) throw Error(ErrorCode::Io, "cannot open payload " + p.string());
  return is;
}

inline void expect_kind(const json& m, const std::string& kind) {
  const std::string k = m.value("kind", "");
  if (k != kind) throw Error(ErrorCode::Parse, "expected a '" + kind + "' manifest, found '" + k + "'");
}

}  // namespace detail

inline void save_scalar(const fs::path& manifest_path, const ScalarField& f) {
  const fs::path bin = payload_path(manifest_path);
  write_json(manifest_path, detail::manifest("scalar", f.grid, 1, 1, 0.0, bin));
  auto os = detail::open_payload(bin);
  write_f64(os, f.values);
}

inline ScalarField load_scalar(const fs::path& manifest_path) {
  const json m = read_json(manifest_path);
  detail::expect_kind(m, "scalar");
  ScalarField f(detail::grid_from(m));
  auto is = detail::open_payload(manifest_path, m);
  read_f64(is, f.values);
  return f;
}

template <class Field>
inline void save_components(const fs::path& manifest_path, const Field& f, const std::string& kind) {
  const fs::path bin = payload_path(manifest_path);
  write_json(manifest_path, detail::manifest(kind, f.grid(), f.dim(), 1, 0.0, bin));
  auto os = detail::open_payload(bin);
  for (int a = 0; a < f.dim(); ++a) write_f64(os, f[a].values);
}

template <class Field>
inline Field load_components(const fs::path& manifest_path, const std::string& kind) {
  const json m = read_json(manifest_path);
  detail::expect_kind(m, kind);
  Field f(detail::grid_from(m));
  auto is = detail::open_payload(manifest_path, m);
  for (int a = 0; a < f.dim(); ++a) read_f64(is, f[a].values);
  return f;
}

inline void save_generator(const fs::path& manifest_path, const Generator& g) {
  const fs::path bin = payload_path(manifest_path);
  json m = detail::manifest("generator", g.grid, 1, g.samples(), g.dt, bin);
  json harms = json::array();
  for (const auto& h : g.harms) harms.push_back(h.lambda);
  m["harmonic"] = harms;
  write_json(manifest_path, m);
  auto os = detail::open_payload(bin);
  for (const auto& u : g.hams) write_f64(os, u.values);
}

inline Generator load_generator_file(const fs::path& manifest_path) {
  const json m = read_json(manifest_path);
  detail::expect_kind(m, "generator");
  Generator g;
  g.grid = detail::grid_from(m);
  try {
    g.dt = m.at("dt").get<double>();
    const auto samples = m.at("samples").get<std::size_t>();
    const auto& harms = m.at("harmonic");
    if (harms.size() != samples) throw Error(ErrorCode::Parse, "harmonic list length differs from sample count");
    auto is = detail::open_payload(manifest_path, m);
    for (std::size_t k = 0; k < samples; ++k) {
      ScalarField u(g.grid);
      read_f64(is, u.values);
      g.hams.push_back(std::move(u));
      g.harms.emplace_back(harms[k].get<std::vector<double>>());
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("generator manifest: ") + e.what());
  }
  g.validate(1e-8);
  return g;
}

inline void save_isotopy(const fs::path& manifest_path, const Isotopy& phi) {
  const fs::path bin = payload_path(manifest_path);
  write_json(manifest_path, detail::manifest("isotopy", phi.grid, phi.grid.dim(), phi.samples(), phi.dt, bin));
  auto os = detail::open_payload(bin);
  for (const auto& D : phi.maps)
    for (int a = 0; a < D.dim(); ++a) write_f64(os, D[a].values);
  for (const auto& L : phi.velocities)
    for (int a = 0; a < L.dim(); ++a) write_f64(os, L[a].values);
}

inline Isotopy load_isotopy(const fs::path& manifest_path) {
  const json m = read_json(manifest_path);
  detail::expect_kind(m, "isotopy");
  Isotopy phi;
  phi.grid = detail::grid_from(m);
  const auto samples = m.value("samples", std::size_t{0});
  phi.dt = m.value("dt", 0.0);
  require(samples >= 1 && phi.dt > 0.0, ErrorCode::Parse, "isotopy manifest needs samples and dt");
  auto is = detail::open_payload(manifest_path, m);
  for (auto* seq : {&phi.maps, &phi.velocities})
    for (std::size_t k = 0; k < samples; ++k) {
      VectorFieldGrid f(phi.grid);
      for (int a = 0; a < f.dim(); ++a) read_f64(is, f[a].values);
      seq->push_back(std::move(f));
    }
  return phi;
}

// ---------------------------------------------------------------------------
// Analytic generator specs:
// {
//   "n": 1,
//   "terms": [{"k": [1, 0], "amp": 0.05, "drift": 0.0, "phase": 0.0}],
//   "harmonic": {"base": [0, 0.3], "slope": [0, 0], "wave": [0, 0]},
//   "rotation": {"v": [0.3, 0.4], "j": 2}
// }
// "rotation" adds (j/(1+j)) times the rotation form of v to the base.

inline AnalyticGenerator analytic_from_json(const json& j, int n) {
  AnalyticGenerator a;
  auto vec = [&](const json& obj, const char* key) {
    HarmonicForm h = HarmonicForm::zero(n);
    if (obj.contains(key)) {
      auto v = obj.at(key).get<std::vector<double>>();
      require(static_cast<int>(v.size()) == 2 * n, ErrorCode::Parse, std::string("'") + key + "' must have 2n entries");
      h.lambda = std::move(v);
    }
    return h;
  };
  try {
    if (j.contains("n") && j.at("n").get<int>() != n)
      throw Error(ErrorCode::DimensionMismatch, "generator dimension differs from configured n");
    for (const auto& t : j.value("terms", json::array())) {
      FourierTerm term;
      term.k = t.at("k").get<std::vector<int>>();
      require(static_cast<int>(term.k.size()) == 2 * n, ErrorCode::Parse, "term wave vector must have 2n entries");
      term.amp = t.value("amp", 0.0);
      term.drift = t.value("drift", 0.0);
      term.phase = t.value("phase", 0.0);
      a.terms.push_back(std::move(term));
    }
    const json h = j.value("harmonic", json::object());
    a.harmonic.base = vec(h, "base");
    a.harmonic.slope = vec(h, "slope");
    a.harmonic.wave = vec(h, "wave");
    if (j.contains("rotation")) {
      const json& r = j.at("rotation");
      auto v = r.at("v").get<std::vector<double>>();
      require(static_cast<int>(v.size()) == 2 * n, ErrorCode::Parse, "rotation vector must have 2n entries");
      double speed = 1.0;
      if (r.contains("j")) {
        const double jj = r.at("j").get<double>();
        require(jj > 0.0, ErrorCode::Parse, "reparametrization index must be positive");
        speed = jj / (1.0 + jj);
      }
      a.harmonic.base += speed * rotation_form(v);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("generator description: ") + e.what());
  }
  return a;
}

/// Loads a generator manifest, or samples an analytic description on (g, steps).
inline Generator load_generator(const fs::path& path, const Grid& g, std::size_t steps) {
  const json j = read_json(path);
  if (j.value("kind", "") == "generator") return load_generator_file(path);
  return analytic_from_json(j, g.n).sample(g, steps);
}

// ---------------------------------------------------------------------------
// CSV.

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) { os_.precision(17); }

  template <class... Ts>
  void row(const Ts&... cells) {
    bool first = true;
    ((os_ << (first ? "" : ",") << cells, first = false), ...);
    os_ << '\n';
  }

 private:
  std::ostream& os_;
};

inline void write_scalar_csv(std::ostream& os, const ScalarField& f) {
  os.precision(17);
  for (int a = 0; a < f.grid.dim(); ++a) os << "theta" << a + 1 << ',';
  os << "value\n";
  std::vector<double> x(f.grid.dim());
  for (std::size_t p = 0; p < f.size(); ++p) {
    f.grid.point(p, x);
    for (double c : x) os << c << ',';
    os << f[p] << '\n';
  }
}

}  // namespace symtorus::io
