#include "linqubo/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "linqubo/errors.hpp"

namespace linqubo {

namespace {

using nlohmann::json;

constexpr std::string_view kQuboFormatTag = "linqubo-qubo";

std::size_t line_of_byte(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), line_of_byte(text, e.byte == 0 ? 0 : e.byte - 1));
  }
}

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw ParseError("field '" + field + "': " + what, 0, field);
}

double number_at(const json& node, const std::string& field) {
  if (!node.is_number()) field_error(field, "expected a number");
  const double v = node.get<double>();
  if (!std::isfinite(v)) field_error(field, "value is not finite");
  return v;
}

long long integer_at(const json& node, const std::string& field) {
  if (!node.is_number_integer()) field_error(field, "expected an integer");
  return node.get<long long>();
}

std::vector<double> numbers_at(const json& node, const std::string& field) {
  if (!node.is_array()) field_error(field, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(node.size());
  for (std::size_t i = 0; i < node.size(); ++i) {
    out.push_back(number_at(node[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Matrix matrix_at(const json& node, const std::string& field) {
  if (!node.is_array() || node.empty()) field_error(field, "expected a nonempty array of rows");
  std::vector<double> flat;
  std::size_t cols = 0;
  for (std::size_t i = 0; i < node.size(); ++i) {
    auto row = numbers_at(node[i], field + "[" + std::to_string(i) + "]");
    if (i == 0) cols = row.size();
    if (row.empty() || row.size() != cols) field_error(field, "rows must be nonempty and equally long");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return Matrix(node.size(), cols, std::move(flat));
}

const json& member(const json& obj, const std::string& key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) field_error(path, "missing");
  return *it;
}

json matrix_to_json(const Matrix& M) {
  json rows = json::array();
  for (std::size_t i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Vector& v) {
  return json(std::vector<double>(v.entries().begin(), v.entries().end()));
}

void insert_entry(QuboMatrix& Q, std::set<QuboMatrix::Key>& seen, long long i, long long j,
                  double value, std::size_t line) {
  if (i < 0 || j < 0 || i > j) throw ParseError("entry indices must satisfy 0 <= i <= j", line, "entries");
  const auto ui = static_cast<std::size_t>(i);
  const auto uj = static_cast<std::size_t>(j);
  if (uj >= Q.n) throw ParseError("entry index out of range", line, "entries");
  if (!std::isfinite(value)) throw ParseError("entry value is not finite", line, "entries");
  if (!seen.insert({ui, uj}).second) {
    throw DuplicateEntry("duplicate entry (" + std::to_string(i) + ", " + std::to_string(j) +
                         ") at line " + std::to_string(line));
  }
  if (value != 0.0) Q.coeffs.emplace(QuboMatrix::Key{ui, uj}, value);
}

template <typename Emit>
void for_each_entry(const QuboMatrix& Q, bool include_zeros, Emit&& emit) {
  if (!include_zeros) {
    for (const auto& [key, value] : Q.coeffs) emit(key.first, key.second, value);
    return;
  }
  for (std::size_t i = 0; i < Q.n; ++i)
    for (std::size_t j = i; j < Q.n; ++j) emit(i, j, Q.at(i, j));
}

QuboFile read_qubo_json(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("QUBO document must be an object", 1);
  QuboFile file;
  const long long n = integer_at(member(doc, "n", "n"), "n");
  if (n < 0) field_error("n", "must be non-negative");
  file.matrix.n = static_cast<std::size_t>(n);
  file.matrix.offset = number_at(member(doc, "offset", "offset"), "offset");

  if (const auto meta = doc.find("metadata"); meta != doc.end()) {
    if (!meta->is_object()) field_error("metadata", "expected an object");
    if (const auto m = meta->find("model"); m != meta->end()) {
      if (!m->is_string()) field_error("metadata.model", "expected a string");
      file.model = parse_model(m->get<std::string>());
    }
    if (const auto a = meta->find("annihilate_pm"); a != meta->end()) {
      if (!a->is_boolean()) field_error("metadata.annihilate_pm", "expected a boolean");
      file.annihilate_pm = a->get<bool>();
    }
    if (const auto e = meta->find("encoding"); e != meta->end()) {
      const auto vars = integer_at(member(*e, "num_vars", "metadata.encoding.num_vars"),
                                   "metadata.encoding.num_vars");
      const auto low = integer_at(member(*e, "low", "metadata.encoding.low"), "metadata.encoding.low");
      const auto high = integer_at(member(*e, "high", "metadata.encoding.high"), "metadata.encoding.high");
      if (vars <= 0 || low > high) field_error("metadata.encoding", "invalid encoding");
      file.encoding = RadixEncoding(static_cast<std::size_t>(vars), static_cast<int>(low), static_cast<int>(high));
      if (num_qubits(*file.encoding) != file.matrix.n) {
        field_error("metadata.encoding", "qubit count does not match n");
      }
    }
  }

  const json& entries = member(doc, "entries", "entries");
  if (!entries.is_array()) field_error("entries", "expected an array");
  std::set<QuboMatrix::Key> seen;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const std::string path = "entries[" + std::to_string(k) + "]";
    const json& e = entries[k];
    if (!e.is_array() || e.size() != 3) field_error(path, "expected [i, j, value]");
    insert_entry(file.matrix, seen, integer_at(e[0], path), integer_at(e[1], path),
                 number_at(e[2], path), 0);
  }
  return file;
}

template <typename T>
bool parse_token(std::string_view token, T& out) {
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    const std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') ++pos;
    if (pos > start) out.push_back(line.substr(start, pos - start));
  }
  return out;
}

QuboFile read_qubo_coordinates(std::string_view text) {
  QuboFile file;
  std::set<QuboMatrix::Key> seen;
  bool header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty() || tokens.front().starts_with('#')) continue;
    if (!header) {
      long long n = 0;
      double offset = 0.0;
      if (tokens.size() != 3 || tokens[0] != "qubo" || !parse_token(tokens[1], n) || n < 0 ||
          !parse_token(tokens[2], offset)) {
        throw ParseError("expected header 'qubo <n> <offset>'", line_no, "header");
      }
      file.matrix.n = static_cast<std::size_t>(n);
      file.matrix.offset = offset;
      header = true;
      continue;
    }
    long long i = 0;
    long long j = 0;
    double value = 0.0;
    if (tokens.size() != 3 || !parse_token(tokens[0], i) || !parse_token(tokens[1], j) ||
        !parse_token(tokens[2], value)) {
      throw ParseError("expected '<i> <j> <value>'", line_no, "entries");
    }
    insert_entry(file.matrix, seen, i, j, value, line_no);
  }
  if (!header) throw ParseError("missing 'qubo <n> <offset>' header", line_no, "header");
  return file;
}

}  // namespace

CongruenceDecomposition ProblemFile::decomposition() const {
  const Matrix G = gram(A);
  if (R) return congruence_from_r(G, *R);
  return scale ? congruence_diagonalize(G, *scale) : congruence_diagonalize(G);
}

ProblemFile read_problem(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("problem document must be an object", 1);
  ProblemFile p;
  p.A = matrix_at(member(doc, "A", "A"), "A");
  p.b = Vector(numbers_at(member(doc, "b", "b"), "b"));
  if (p.b.dim() != p.A.rows()) {
    throw DimensionMismatch("b has " + std::to_string(p.b.dim()) + " entries but A has " +
                            std::to_string(p.A.rows()) + " rows");
  }
  const json& enc = member(doc, "encoding", "encoding");
  if (!enc.is_object()) field_error("encoding", "expected an object");
  const auto low = integer_at(member(enc, "low", "encoding.low"), "encoding.low");
  const auto high = integer_at(member(enc, "high", "encoding.high"), "encoding.high");
  if (low > high) field_error("encoding", "low must not exceed high");
  if (high - low >= 30 || low < -1000 || high > 1000) field_error("encoding", "exponent range too wide");
  p.low_exp = static_cast<int>(low);
  p.high_exp = static_cast<int>(high);

  if (const auto s = doc.find("scale"); s != doc.end()) {
    auto values = numbers_at(*s, "scale");
    if (values.size() != p.A.cols()) throw DimensionMismatch("scale length must equal the column count of A");
    if (std::any_of(values.begin(), values.end(), [](double v) { return !(v > 0.0); })) {
      field_error("scale", "entries must be positive");
    }
    p.scale = Vector(std::move(values));
  }
  if (const auto r = doc.find("R"); r != doc.end()) {
    Matrix R = matrix_at(*r, "R");
    if (R.rows() != p.A.cols() || R.cols() != p.A.cols()) {
      throw DimensionMismatch("R must be square with as many rows as A has columns");
    }
    p.R = std::move(R);
  }
  return p;
}

std::string write_problem(const ProblemFile& problem) {
  json doc;
  doc["A"] = matrix_to_json(problem.A);
  doc["b"] = vector_to_json(problem.b);
  doc["encoding"] = {{"low", problem.low_exp}, {"high", problem.high_exp}};
  if (problem.scale) doc["scale"] = vector_to_json(*problem.scale);
  if (problem.R) doc["R"] = matrix_to_json(*problem.R);
  return doc.dump(2) + "\n";
}

std::string_view to_string(QuboModel model) {
  switch (model) {
    case QuboModel::vanilla:
      return "vanilla";
    case QuboModel::congruence:
      return "congruence";
    case QuboModel::unknown:
      break;
  }
  return "unknown";
}

QuboModel parse_model(std::string_view name) {
  if (name == "vanilla") return QuboModel::vanilla;
  if (name == "congruence") return QuboModel::congruence;
  return QuboModel::unknown;
}

std::string write_qubo(const QuboFile& file, bool include_zeros) {
  json meta = {{"model", to_string(file.model)},
               {"annihilate_pm", file.annihilate_pm},
               {"include_zeros", include_zeros}};
  if (file.encoding) {
    meta["encoding"] = {{"num_vars", file.encoding->num_vars},
                        {"low", file.encoding->low_exp},
                        {"high", file.encoding->high_exp}};
  }
  // Entries are written one per line so the file diffs and greps cleanly.
  std::ostringstream out;
  out << "{\n  \"format\": \"" << kQuboFormatTag << "\",\n";
  out << "  \"n\": " << file.matrix.n << ",\n";
  out << "  \"offset\": " << json(file.matrix.offset).dump() << ",\n";
  out << "  \"metadata\": " << meta.dump() << ",\n";
  out << "  \"entries\": [";
  bool first = true;
  for_each_entry(file.matrix, include_zeros, [&](std::size_t i, std::size_t j, double v) {
    out << (first ? "\n" : ",\n") << "    [" << i << ", " << j << ", " << json(v).dump() << "]";
    first = false;
  });
  out << (first ? "]\n}\n" : "\n  ]\n}\n");
  return out.str();
}

std::string write_qubo_coordinates(const QuboMatrix& Q, bool include_zeros) {
  std::string out = "qubo " + std::to_string(Q.n) + " " + format_double(Q.offset) + "\n";
  for_each_entry(Q, include_zeros, [&](std::size_t i, std::size_t j, double v) {
    out += std::to_string(i) + " " + std::to_string(j) + " " + format_double(v) + "\n";
  });
  return out;
}

QuboFile read_qubo(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw ParseError("empty QUBO file", 1);
  return text[first] == '{' ? read_qubo_json(text) : read_qubo_coordinates(text);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

std::string format_double(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw Error("cannot format value");
  return std::string(buf, ptr);
}

}  // namespace linqubo
