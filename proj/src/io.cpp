#include "minreach/io.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "minreach/errors.hpp"

namespace minreach::io {

namespace {

double number_from_json(const Json& j, const std::string& what) {
  if (!j.is_number()) throw InputError(what + ": expected a number");
  return j.get<double>();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Vector parse_number_list(const std::string& text, const std::string& what) {
  // Comma-separated when any comma is present, else whitespace-separated.
  // An empty comma field is an error rather than silently skipped.
  const bool commas = text.find(',') != std::string::npos;
  std::vector<double> values;
  std::string token;
  auto flush = [&](bool required) {
    const auto first = token.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
      if (required) throw InputError(what + ": empty field");
      token.clear();
      return;
    }
    token = token.substr(first, token.find_last_not_of(" \t\r\n") - first + 1);
    char* end = nullptr;
    errno = 0;
    const double x = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size() || errno == ERANGE) {
      throw InputError(what + ": cannot parse '" + token + "' as a number");
    }
    values.push_back(x);
    token.clear();
  };
  for (char c : text) {
    if (commas ? c == ',' : std::isspace(static_cast<unsigned char>(c))) {
      flush(commas);
    } else {
      token.push_back(c);
    }
  }
  flush(false);
  if (values.empty()) throw InputError(what + ": empty vector");
  return Eigen::Map<const Vector>(values.data(),
                                  static_cast<Index>(values.size()));
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Matrix matrix_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) {
    throw InputError(what + ": expected a non-empty array of rows");
  }
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw InputError(what + ": rows must be non-empty arrays");
  Matrix m(static_cast<Index>(j.size()), static_cast<Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      throw InputError(what + ": row " + std::to_string(r + 1) + " has " +
                       (j[r].is_array() ? std::to_string(j[r].size()) : "no") +
                       " entries, expected " + std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Index>(r), static_cast<Index>(c)) =
          number_from_json(j[r][c], what);
    }
  }
  return m;
}

Vector vector_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) {
    throw InputError(what + ": expected a non-empty array of numbers");
  }
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Index>(i)) = number_from_json(j[i], what);
  }
  return v;
}

Json system_to_json(const LtiSystem& sys, std::optional<std::uint64_t> seed) {
  Json j;
  j["n"] = sys.n();
  j["a"] = matrix_to_json(sys.a());
  if (sys.w()) j["w"] = matrix_to_json(*sys.w());
  if (seed) j["seed"] = *seed;
  return j;
}

LtiSystem system_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("system file: expected a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer()) {
    throw InputError("system file: missing integer field 'n'");
  }
  const auto n = j["n"].get<long long>();
  if (n < 1) throw InputError("system file: 'n' must be positive");
  if (!j.contains("a")) throw InputError("system file: missing field 'a'");
  Matrix a = matrix_from_json(j["a"], "system file 'a'");
  if (a.rows() != n || a.cols() != n) {
    throw InputError("system file: 'a' is " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + ", expected " +
                     std::to_string(n) + "x" + std::to_string(n));
  }
  if (j.contains("w") && !j["w"].is_null()) {
    Matrix w = matrix_from_json(j["w"], "system file 'w'");
    if (w.cols() != n) {
      throw InputError("system file: 'w' has " + std::to_string(w.cols()) +
                       " columns, expected " + std::to_string(n));
    }
    return LtiSystem(std::move(a), std::move(w));
  }
  return LtiSystem(std::move(a));
}

std::vector<Ball> balls_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) {
    throw InputError("balls file: expected a non-empty JSON array");
  }
  std::vector<Ball> balls;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string what = "ball " + std::to_string(i + 1);
    const Json& b = j[i];
    if (!b.is_object() || !b.contains("center") || !b.contains("radius_sq")) {
      throw InputError(what + ": expected {\"center\": [...], \"radius_sq\": r}");
    }
    Ball ball{vector_from_json(b["center"], what + " center"),
              number_from_json(b["radius_sq"], what + " radius_sq")};
    if (!(ball.radius_sq > 0.0)) {
      throw InputError(what + ": radius_sq must be positive");
    }
    balls.push_back(std::move(ball));
  }
  return balls;
}

Json instance_to_json(const HittingSetInstance& instance) {
  Json j;
  j["m"] = instance.m;
  j["sets"] = instance.sets;
  return j;
}

HittingSetInstance instance_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("m") || !j.contains("sets")) {
    throw InputError("instance file: expected {\"m\": int, \"sets\": [[...]]}");
  }
  if (!j["m"].is_number_integer()) {
    throw InputError("instance file: 'm' must be an integer");
  }
  if (!j["sets"].is_array()) {
    throw InputError("instance file: 'sets' must be an array");
  }
  HittingSetInstance instance;
  instance.m = j["m"].get<int>();
  for (const Json& set : j["sets"]) {
    if (!set.is_array()) throw InputError("instance file: each set must be an array");
    std::vector<int> elements;
    for (const Json& e : set) {
      if (!e.is_number_integer()) {
        throw InputError("instance file: set elements must be integers");
      }
      elements.push_back(e.get<int>());
    }
    instance.sets.push_back(std::move(elements));
  }
  validate(instance);
  return instance;
}

Json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  if (!out) throw InputError("write failed for " + path.string());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Vector parse_vector_arg(const std::string& arg) {
  if (arg.empty()) throw InputError("empty vector argument");
  if (arg[0] != '@') return parse_number_list(arg, "vector argument");

  const std::filesystem::path path = arg.substr(1);
  const std::string text = read_text_file(path);
  const Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_array()) return vector_from_json(j, path.string());
  if (j.is_object()) {
    if (j.contains("chi")) return vector_from_json(j["chi"], path.string());
    throw InputError(path.string() + ": JSON object without a 'chi' array");
  }
  return parse_number_list(text, path.string());
}

}  // namespace minreach::io
