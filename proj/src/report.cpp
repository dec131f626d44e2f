#include "linqubo/report.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <fmt/format.h>

#include "linqubo/errors.hpp"

namespace linqubo {

namespace {

std::string fmt_real(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  return fmt::format("{:.10g}", v);
}

std::string fmt_vector(const Vector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.dim(); ++i) out += (i ? ", " : "") + fmt_real(v[i]);
  return out + ")";
}

std::string bit_string(std::span<const std::uint8_t> bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

std::span<const std::uint8_t> var_bits(const QubitAssignment& q, const RadixEncoding& enc, std::size_t v) {
  return std::span<const std::uint8_t>(q.bits).subspan(v * enc.qubits_per_var(), enc.qubits_per_var());
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string render_diagonalization(const ProblemFile& problem) {
  const LinearSystem sys = problem.system();
  const CongruenceDecomposition dec = problem.decomposition();
  const CongruenceSolution sol = solve_via_congruence(sys, dec);

  std::string out;
  out += "R:\n";
  for (std::size_t i = 0; i < dec.R.rows(); ++i) {
    out += " ";
    for (std::size_t j = 0; j < dec.R.cols(); ++j) out += fmt::format(" {:>14}", fmt_real(dec.R(i, j)));
    out += "\n";
  }
  out += "D: " + fmt_vector(dec.D) + "\n";
  out += "y*: " + fmt_vector(sol.y) + "\n";
  out += "x*: " + fmt_vector(sol.x) + "\n";
  out += "residual: " + fmt_real(residual_norm_sq(sys, sol.x)) + "\n";
  if (dec.singular_warning) {
    out += "SingularWarning: Gram matrix is rank deficient; zero pivots give d_ii = 0\n";
  }
  return out;
}

QuboFile build_model(const ProblemFile& problem, QuboModel model, Annihilate annihilate) {
  const LinearSystem sys = problem.system();
  const RadixEncoding enc = problem.encoding();
  QuboFile file;
  file.model = model;
  file.encoding = enc;
  ReductionFlags flags;
  switch (model) {
    case QuboModel::vanilla:
      flags = ReductionFlags::vanilla_default();
      break;
    case QuboModel::congruence:
      flags = ReductionFlags::congruence_default();
      break;
    case QuboModel::unknown:
      throw Error("unknown QUBO model");
  }
  if (annihilate != Annihilate::model_default) flags.annihilate_pm = annihilate == Annihilate::on;
  file.annihilate_pm = flags.annihilate_pm;
  file.matrix = model == QuboModel::vanilla
                    ? build_vanilla(sys, enc, flags)
                    : build_congruence(sys, problem.decomposition(), enc, flags);
  return file;
}

std::string render_sparsity(const QuboMatrix& Q) {
  const SparsityReport rep = sparsity_report(Q);
  const std::size_t dense = Q.n * (Q.n + 1) / 2;
  const double ratio = dense == 0 ? 0.0 : static_cast<double>(rep.nnz) / static_cast<double>(dense);
  std::string blocks;
  for (std::size_t i = 0; i < rep.block_sizes.size(); ++i) {
    blocks += (i ? "," : "") + std::to_string(rep.block_sizes[i]);
  }
  return fmt::format("nnz {} / bound {} (dense {}, ratio {:.6f}, blocks [{}])", rep.nnz, rep.bound, dense,
                     ratio, blocks);
}

OccurrenceTable make_occurrence_table(const QuboFile& file, std::span<const SolveResult> results,
                                      std::span<const QubitAssignment> reference_ground, bool collapse,
                                      const std::string& count_prefix) {
  const QuboMatrix& Q = file.matrix;
  std::optional<RadixEncoding> enc;
  if (file.encoding && num_qubits(*file.encoding) == Q.n) enc = file.encoding;

  std::set<QubitAssignment> ground(reference_ground.begin(), reference_ground.end());
  if (ground.empty()) {
    bool any = false;
    double lowest = 0.0;
    for (const auto& res : results) {
      if (!res.records.empty() && (!any || res.ground_energy < lowest)) lowest = res.ground_energy;
      any = any || !res.records.empty();
    }
    for (const auto& res : results)
      for (const auto& rec : res.records)
        if (rec.energy <= lowest + kGroundTolerance) ground.insert(rec.assignment);
  }

  OccurrenceTable table;
  for (std::size_t t = 0; t < results.size(); ++t) {
    table.count_headers.push_back(count_prefix + std::to_string(t + 1));
    table.reads.push_back(results[t].total_reads);
  }

  std::map<QubitAssignment, std::vector<std::uint64_t>> counts;
  for (const auto& g : ground) counts.emplace(g, std::vector<std::uint64_t>(results.size(), 0));
  for (std::size_t t = 0; t < results.size(); ++t)
    for (const auto& rec : results[t].records)
      if (auto it = counts.find(rec.assignment); it != counts.end()) it->second[t] += rec.occurrences;

  if (enc) {
    for (std::size_t v = 0; v < enc->num_vars; ++v) table.key_headers.push_back("x" + std::to_string(v + 1));
  } else {
    table.key_headers.push_back("bits");
  }

  // Per-variable pattern sets of the ground set.
  std::vector<std::set<std::vector<std::uint8_t>>> patterns;
  bool product = false;
  if (collapse && enc && enc->num_vars >= 2 && !ground.empty()) {
    patterns.resize(enc->num_vars);
    for (const auto& g : ground)
      for (std::size_t v = 0; v < enc->num_vars; ++v) {
        auto bits = var_bits(g, *enc, v);
        patterns[v].emplace(bits.begin(), bits.end());
      }
    std::size_t size = 1;
    bool multi_tail = false;
    for (std::size_t v = 0; v < enc->num_vars; ++v) {
      size *= patterns[v].size();
      if (v > 0 && patterns[v].size() > 1) multi_tail = true;
    }
    product = multi_tail && size == ground.size();
  }

  if (product) {
    table.collapsed = true;
    const std::size_t k = enc->qubits_per_var();
    for (const auto& head : patterns[0]) {
      OccurrenceTable::Row row;
      row.cells.push_back(bit_string(head));
      std::string decoded = "(";
      QubitAssignment probe;
      probe.bits.assign(head.begin(), head.end());
      double head_value = 0.0;
      for (std::size_t t = 0; t < k; ++t) head_value += head[t] ? enc->weight(t) : 0.0;
      decoded += fmt_real(head_value);
      for (std::size_t v = 1; v < enc->num_vars; ++v) {
        const auto& set = patterns[v];
        row.cells.push_back(set.size() == 1 ? bit_string(*set.begin())
                                            : fmt::format("all {} combinations", set.size()));
        std::set<double> values;
        for (const auto& p : set) {
          double value = 0.0;
          for (std::size_t t = 0; t < k; ++t) value += p[t] ? enc->weight(t) : 0.0;
          values.insert(value);
        }
        decoded += ", " + (values.size() == 1 ? fmt_real(*values.begin()) : std::string("*"));
        probe.bits.insert(probe.bits.end(), set.begin()->begin(), set.begin()->end());
      }
      row.decoded = decoded + ")";
      row.energy = energy(Q, probe);
      row.counts.assign(results.size(), 0);
      for (const auto& [g, c] : counts) {
        auto bits = var_bits(g, *enc, 0);
        if (std::equal(bits.begin(), bits.end(), head.begin(), head.end()))
          for (std::size_t t = 0; t < c.size(); ++t) row.counts[t] += c[t];
      }
      table.rows.push_back(std::move(row));
    }
  } else {
    for (const auto& [g, c] : counts) {
      OccurrenceTable::Row row;
      if (enc) {
        for (std::size_t v = 0; v < enc->num_vars; ++v) row.cells.push_back(bit_string(var_bits(g, *enc, v)));
        row.decoded = fmt_vector(decode(*enc, g));
      } else {
        row.cells.push_back(bit_string(g.bits));
      }
      row.energy = energy(Q, g);
      row.counts = c;
      table.rows.push_back(std::move(row));
    }
    std::stable_sort(table.rows.begin(), table.rows.end(),
                     [](const auto& a, const auto& b) { return a.energy < b.energy; });
  }

  table.totals.assign(results.size(), 0);
  for (const auto& row : table.rows)
    for (std::size_t t = 0; t < row.counts.size(); ++t) table.totals[t] += row.counts[t];
  return table;
}

std::string render_table_text(const OccurrenceTable& table) {
  std::vector<std::string> headers = table.key_headers;
  const bool has_decoded = !table.rows.empty() && !table.rows.front().decoded.empty();
  if (has_decoded) headers.push_back("value");
  headers.push_back("energy");
  headers.insert(headers.end(), table.count_headers.begin(), table.count_headers.end());

  std::vector<std::vector<std::string>> body;
  for (const auto& row : table.rows) {
    std::vector<std::string> line = row.cells;
    if (has_decoded) line.push_back(row.decoded);
    line.push_back(fmt::format("{:.4f}", row.energy));
    for (auto c : row.counts) line.push_back(std::to_string(c));
    body.push_back(std::move(line));
  }
  const std::size_t lead = headers.size() - table.count_headers.size();
  auto footer = [&](const std::string& label, const std::vector<std::uint64_t>& values) {
    std::vector<std::string> line(lead, "");
    line[lead - 1] = label;
    for (auto v : values) line.push_back(std::to_string(v));
    return line;
  };
  const auto total = footer("Total", table.totals);
  const auto reads = footer("Reads", table.reads);

  std::vector<std::size_t> width(headers.size(), 0);
  auto widen = [&](const std::vector<std::string>& line) {
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  };
  widen(headers);
  for (const auto& line : body) widen(line);
  widen(total);
  widen(reads);

  auto emit = [&](const std::vector<std::string>& line) {
    std::string s;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i) s += "  ";
      s += i >= lead - 1 ? fmt::format("{:>{}}", line[i], width[i]) : fmt::format("{:<{}}", line[i], width[i]);
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s + "\n";
  };
  std::size_t rule = 0;
  for (auto w : width) rule += w + 2;
  const std::string sep(rule > 2 ? rule - 2 : 0, '-');

  std::string out = emit(headers) + sep + "\n";
  for (const auto& line : body) out += emit(line);
  out += sep + "\n" + emit(total) + emit(reads);
  return out;
}

std::string render_table_csv(const OccurrenceTable& table) {
  const bool has_decoded = !table.rows.empty() && !table.rows.front().decoded.empty();
  std::vector<std::string> headers = table.key_headers;
  if (has_decoded) headers.push_back("value");
  headers.push_back("energy");
  headers.insert(headers.end(), table.count_headers.begin(), table.count_headers.end());

  auto join = [](const std::vector<std::string>& fields) {
    std::string s;
    for (std::size_t i = 0; i < fields.size(); ++i) s += (i ? "," : "") + csv_field(fields[i]);
    return s + "\n";
  };
  std::string out = join(headers);
  for (const auto& row : table.rows) {
    std::vector<std::string> line = row.cells;
    if (has_decoded) line.push_back(row.decoded);
    line.push_back(format_double(row.energy));
    for (auto c : row.counts) line.push_back(std::to_string(c));
    out += join(line);
  }
  const std::size_t lead = headers.size() - table.count_headers.size();
  for (const auto& [label, values] : {std::pair{std::string("Total"), table.totals},
                                      std::pair{std::string("Reads"), table.reads}}) {
    std::vector<std::string> line(lead, "");
    line[0] = label;
    for (auto v : values) line.push_back(std::to_string(v));
    out += join(line);
  }
  return out;
}

CompareReport run_compare(const ProblemFile& problem, const AnnealParams& params, std::size_t trials) {
  CompareReport report;
  report.trials = trials;
  report.reads_per_trial = params.num_reads;

  auto summarize = [&](QuboModel model) {
    const QuboFile file = build_model(problem, model);
    const SparsityReport sparsity = sparsity_report(file.matrix);
    const SolveResult exact = brute_force(file.matrix, 0);

    ModelSummary s;
    s.model = model;
    s.nnz = sparsity.nnz;
    s.nnz_bound = sparsity.bound;
    s.ground_energy = exact.ground_energy;
    s.degeneracy = exact.ground_states.size();
    double rate_sum = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      AnnealParams p = params;
      p.seed = params.seed + t;
      const SolveResult sampled = simulated_anneal(file.matrix, p);
      s.hits.push_back(ground_hits(sampled, exact.ground_states));
      rate_sum += ground_hit_rate(sampled, exact.ground_states);
    }
    s.mean_hit_rate = trials == 0 ? 0.0 : rate_sum / static_cast<double>(trials);
    return s;
  };

  report.vanilla = summarize(QuboModel::vanilla);
  report.congruence = summarize(QuboModel::congruence);
  report.ratio = report.vanilla.nnz == 0
                     ? 0.0
                     : static_cast<double>(report.congruence.nnz) / static_cast<double>(report.vanilla.nnz);
  return report;
}

std::string render_compare(const CompareReport& report) {
  std::string out = fmt::format("trials {} x reads {}\n\n", report.trials, report.reads_per_trial);
  std::string header = fmt::format("{:<11} {:>5} {:>6} {:>12} {:>10}", "model", "nnz", "bound", "ground", "degeneracy");
  for (std::size_t t = 0; t < report.trials; ++t) header += fmt::format(" {:>8}", fmt::format("run {}", t + 1));
  header += fmt::format(" {:>10}\n", "mean rate");
  out += header;
  for (const ModelSummary* s : {&report.vanilla, &report.congruence}) {
    std::string line = fmt::format("{:<11} {:>5} {:>6} {:>12.4f} {:>10}", to_string(s->model), s->nnz,
                                   s->nnz_bound, s->ground_energy, s->degeneracy);
    for (auto h : s->hits) line += fmt::format(" {:>8}", h);
    line += fmt::format(" {:>9.2f}%\n", 100.0 * s->mean_hit_rate);
    out += line;
  }
  const std::size_t num = report.congruence.nnz;
  const std::size_t den = report.vanilla.nnz;
  out += "\n";
  out += fmt::format("nnz ratio {}/{} = {:.6f} {} 1/3\n", num, den, report.ratio,
                     3 * num < den ? "<" : ">=");
  const char* order = report.congruence.mean_hit_rate > report.vanilla.mean_hit_rate ? ">" : "<=";
  out += fmt::format("mean hit rate congruence {:.2f}% {} vanilla {:.2f}%\n", 100.0 * report.congruence.mean_hit_rate,
                     order, 100.0 * report.vanilla.mean_hit_rate);
  return out;
}

}  // namespace linqubo
