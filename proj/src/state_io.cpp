#include "icem/state_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace icem {

namespace {

using nlohmann::json;

[[noreturn]] void fail(std::string_view source, const std::string& field,
                       const std::string& msg) {
  throw ParseError(std::string(source) + ": field '" + field + "': " + msg);
}

const json& require(const json& obj, const char* key, std::string_view source) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(source, key, "missing");
  return *it;
}

double number(const json& j, std::string_view source, const std::string& field) {
  if (!j.is_number()) fail(source, field, "expected a number");
  return j.get<double>();
}

Complex complex_pair(const json& j, std::string_view source,
                     const std::string& field) {
  if (!j.is_array() || j.size() != 2) {
    fail(source, field, "expected an [re, im] pair");
  }
  return {number(j[0], source, field + "[0]"), number(j[1], source, field + "[1]")};
}

std::vector<int> read_dims(const json& obj, std::string_view source) {
  const json& d = require(obj, "dims", source);
  if (!d.is_array() || d.empty()) fail(source, "dims", "expected a nonempty list");
  std::vector<int> dims;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!d[i].is_number_integer() || d[i].get<long long>() < 2) {
      fail(source, "dims[" + std::to_string(i) + "]", "expected an integer >= 2");
    }
    dims.push_back(d[i].get<int>());
  }
  return dims;
}

json pair(Complex z) { return json::array({z.real(), z.imag()}); }

// Well-formed input that violates a state invariant stays a DomainError but
// gains the source and field in its message.
template <class F>
auto build(std::string_view source, const char* field, F&& make) {
  try {
    return make();
  } catch (const DomainError& e) {
    throw DomainError(std::string(source) + ": field '" + field + "': " + e.what());
  }
}

}  // namespace

StateFile parse_state(std::string_view text, std::string_view source,
                      const NumericConfig& cfg) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // locate the byte offset as line:column
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(std::string(source) + ":" + std::to_string(line) + ":" +
                     std::to_string(col) + ": malformed JSON: " + e.what());
  }
  if (!doc.is_object()) throw ParseError(std::string(source) + ": expected an object");
  const json& kind = require(doc, "kind", source);
  if (!kind.is_string()) fail(source, "kind", "expected a string");
  const auto k = kind.get<std::string>();

  if (k == "pure") {
    auto dims = read_dims(doc, source);
    const json& a = require(doc, "amplitudes", source);
    if (!a.is_array()) fail(source, "amplitudes", "expected a list");
    Vector amps(static_cast<Eigen::Index>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
      amps[static_cast<Eigen::Index>(i)] =
          complex_pair(a[i], source, "amplitudes[" + std::to_string(i) + "]");
    }
    return build(source, "amplitudes", [&] {
      return StateFile(PureState(std::move(dims), std::move(amps), cfg));
    });
  }
  if (k == "density") {
    auto dims = read_dims(doc, source);
    const json& rows = require(doc, "matrix", source);
    if (!rows.is_array()) fail(source, "matrix", "expected a list of rows");
    const auto n = static_cast<Eigen::Index>(rows.size());
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const std::string rf = "matrix[" + std::to_string(i) + "]";
      const json& row = rows[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
        fail(source, rf, "expected a row of " + std::to_string(n) + " entries");
      }
      for (Eigen::Index j = 0; j < n; ++j) {
        m(i, j) = complex_pair(row[static_cast<std::size_t>(j)], source,
                               rf + "[" + std::to_string(j) + "]");
      }
    }
    return build(source, "matrix", [&] {
      if (total_dimension(dims) > cfg.max_amplitudes) {
        throw ResourceError("density matrix dimension exceeds the cap");
      }
      return StateFile(DensityMatrix(std::move(dims), std::move(m)));
    });
  }
  if (k == "spectrum") {
    const json& v = require(doc, "values", source);
    if (!v.is_array()) fail(source, "values", "expected a list");
    std::vector<double> values;
    for (std::size_t i = 0; i < v.size(); ++i) {
      values.push_back(number(v[i], source, "values[" + std::to_string(i) + "]"));
    }
    return build(source, "values", [&] {
      return StateFile(SchmidtSpectrum(std::move(values), cfg.rank_eps));
    });
  }
  fail(source, "kind", "expected \"pure\", \"density\" or \"spectrum\", got \"" +
                           k + "\"");
}

StateFile read_state_file(const std::filesystem::path& path,
                          const NumericConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_state(buf.str(), path.string(), cfg);
}

std::string serialize_state(const StateFile& state) {
  json doc;
  if (const auto* psi = std::get_if<PureState>(&state)) {
    doc["kind"] = "pure";
    doc["dims"] = psi->dims();
    json amps = json::array();
    for (Eigen::Index i = 0; i < psi->amplitudes().size(); ++i) {
      amps.push_back(pair(psi->amplitudes()[i]));
    }
    doc["amplitudes"] = std::move(amps);
  } else if (const auto* rho = std::get_if<DensityMatrix>(&state)) {
    doc["kind"] = "density";
    doc["dims"] = rho->dims();
    json rows = json::array();
    for (Eigen::Index i = 0; i < rho->matrix().rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < rho->matrix().cols(); ++j) {
        row.push_back(pair(rho->matrix()(i, j)));
      }
      rows.push_back(std::move(row));
    }
    doc["matrix"] = std::move(rows);
  } else {
    doc["kind"] = "spectrum";
    doc["values"] = std::get<SchmidtSpectrum>(state).values();
  }
  return doc.dump(2) + "\n";
}

void write_state_file(const std::filesystem::path& path, const StateFile& state) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path.string() + ": cannot write file");
  out << serialize_state(state);
}

}  // namespace icem
