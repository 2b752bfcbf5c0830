#include "ising/scan.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "ising/errors.hpp"
#include "ising/fitmodel.hpp"
#include "ising/oracle.hpp"
#include "ising/parallel.hpp"
#include "ising/spectral.hpp"

namespace ising {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  std::istringstream in(text);
  while (std::getline(in, current, sep)) parts.push_back(current);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double parse_number(const std::string& token) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    throw ValidationError("not a number: '" + token + "'");
  }
  if (used != token.size() || !std::isfinite(value)) {
    throw ValidationError("not a number: '" + token + "'");
  }
  return value;
}

std::int64_t as_integer(double v, const std::string& context) {
  if (std::nearbyint(v) != v || std::abs(v) > 1e15) {
    throw ValidationError("expected an integer in '" + context + "'");
  }
  return static_cast<std::int64_t>(v);
}

std::string grid_point(double lambda, std::int64_t L, std::int64_t d) {
  std::ostringstream s;
  s.precision(17);
  s << "lambda=" << lambda << ", L=" << L << ", d=" << d;
  return s.str();
}

template <typename Fn>
auto at_point(const std::string& where, Fn&& fn) {
  try {
    return fn();
  } catch (const NumericError& e) {
    throw NumericError(std::string(e.what()) + " [grid point " + where + "]");
  }
}

void require_nonempty(const char* what, bool empty) {
  if (empty) throw ValidationError(std::string("empty grid for ") + what);
}

std::int64_t max_of(const std::vector<std::int64_t>& v) { return *std::max_element(v.begin(), v.end()); }

ScanTable lambda_grid(const ScanRequest& req) {
  ScanTable t{{"lambda", "L", "d", "S_bits"}, {}};
  struct Point {
    double lambda;
    std::int64_t L, d;
  };
  std::vector<Point> points;
  for (const auto L : req.block_sizes) {
    for (const auto d : req.distances) {
      for (const auto lambda : req.lambdas) points.push_back({lambda, L, d});
    }
  }
  std::vector<double> values(points.size());
  parallel_for(points.size(), req.threads, [&](std::size_t i) {
    const auto& p = points[i];
    values[i] = at_point(grid_point(p.lambda, p.L, p.d), [&] {
      return entropy_two_blocks(CorrelationKernel{p.lambda}, p.L, p.d).bits;
    });
  });
  for (std::size_t i = 0; i < points.size(); ++i) {
    t.rows.push_back({points[i].lambda, points[i].L, points[i].d, values[i]});
  }
  return t;
}

ScanTable gl_table(const ScanRequest& req) {
  ScanTable t{{"lambda", "l", "g_l"}, {}};
  std::vector<GlTable> tables;
  tables.reserve(req.lambdas.size());
  for (const auto lambda : req.lambdas) {
    std::ostringstream where;
    where.precision(17);
    where << "lambda=" << lambda << ", l_max=" << req.l_max;
    tables.push_back(at_point(where.str(), [&] { return build_gl_table(CorrelationKernel{lambda}, req.l_max); }));
  }
  for (const auto& table : tables) {
    for (std::int64_t l = -req.l_max; l <= req.l_max; ++l) t.rows.push_back({table.lambda(), l, table[l]});
  }
  return t;
}

ScanTable d_scan(const ScanRequest& req) {
  const std::int64_t L = req.block_sizes.front();
  ScanTable t{{"lambda", "L", "d"}, {}};
  for (std::int64_t k = 1; k <= 2 * L; ++k) t.columns.push_back("nu_" + std::to_string(k));
  t.columns.push_back("S_bits");
  for (const auto lambda : req.lambdas) {
    const std::int64_t l_max = 2 * L + max_of(req.distances) - 1;
    const GlTable table = at_point(grid_point(lambda, L, max_of(req.distances)), [&] {
      return build_gl_table(CorrelationKernel{lambda}, std::max<std::int64_t>(1, l_max));
    });
    std::vector<EntropySpectrum> spectra(req.distances.size());
    parallel_for(spectra.size(), req.threads, [&](std::size_t i) {
      spectra[i] = at_point(grid_point(lambda, L, req.distances[i]),
                            [&] { return two_block_spectrum(table, L, req.distances[i]); });
    });
    for (std::size_t i = 0; i < spectra.size(); ++i) {
      std::vector<Cell> row{lambda, L, req.distances[i]};
      for (const double nu : spectra[i].nus) row.emplace_back(nu);
      row.emplace_back(entropy_from_spectrum(spectra[i]).bits);
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

ScanTable surface(const ScanRequest& req) {
  ScanTable t{{"lambda", "L", "d", "S_bits"}, {}};
  for (const auto lambda : req.lambdas) {
    const std::int64_t l_max = 2 * max_of(req.block_sizes) + max_of(req.distances) - 1;
    const GlTable table = at_point(grid_point(lambda, max_of(req.block_sizes), max_of(req.distances)),
                                   [&] { return build_gl_table(CorrelationKernel{lambda}, l_max); });
    std::vector<std::pair<std::int64_t, std::int64_t>> points;
    for (const auto L : req.block_sizes) {
      for (const auto d : req.distances) points.emplace_back(L, d);
    }
    std::vector<double> values(points.size());
    parallel_for(points.size(), req.threads, [&](std::size_t i) {
      const auto [L, d] = points[i];
      values[i] = at_point(grid_point(lambda, L, d), [&] {
        return entropy_from_spectrum(two_block_spectrum(table, L, d)).bits;
      });
    });
    for (std::size_t i = 0; i < points.size(); ++i) {
      t.rows.push_back({lambda, points[i].first, points[i].second, values[i]});
    }
  }
  return t;
}

ScanTable fit_table(const ScanRequest& req) {
  const FitResult fit = fit_k_critical(req.fit_range, req.threads);
  ScanTable t{{"L_min", "L_max", "K_bits", "alpha", "beta", "correction_c1", "slope_fitted",
               "residual_max_bits"},
              {}};
  t.rows.push_back({fit.fit_range.first, fit.fit_range.second, fit.k_const, fit.alpha, fit.beta,
                    fit.correction, fit.slope_fitted, fit.residual_max});
  return t;
}

ScanTable model_compare(const ScanRequest& req) {
  double k_const = req.k_const;
  if (!req.k_given) k_const = fit_k_critical(req.fit_range, req.threads).k_const;
  const ModelParams params{std::exp2(-6.0 * k_const)};
  ScanRequest grid = req;
  grid.command = ScanCommand::surface;
  grid.lambdas = {1.0};
  const ScanTable numeric = surface(grid);
  ScanTable t{{"L", "d", "S_numeric_bits", "S_model_bits", "S_cc_bits", "abs_error_bits", "K_bits"}, {}};
  for (const auto& row : numeric.rows) {
    const auto L = std::get<std::int64_t>(row[1]);
    const auto d = std::get<std::int64_t>(row[2]);
    const double s = std::get<double>(row[3]);
    const double model = model_entropy(params, k_const, L, d).bits;
    Cell cc;
    if (d >= 1) cc = cc_asymptote(L, d, k_const);
    t.rows.push_back({L, d, s, model, cc, std::abs(model - s), k_const});
  }
  return t;
}

std::string mask_label(const SubsystemMask& mask) {
  std::ostringstream s;
  const auto& sites = mask.sites();
  for (std::size_t i = 0; i < sites.size();) {
    std::size_t j = i;
    while (j + 1 < sites.size() && sites[j + 1] == sites[j] + 1) ++j;
    if (i != 0) s << '|';
    s << sites[i];
    if (j > i) s << '-' << sites[j];
    i = j + 1;
  }
  return s.str();
}

ScanTable oracle_check(const ScanRequest& req) {
  ScanTable t{{"n", "lambda", "mask", "L", "d", "S_ed_spin_bits", "S_ed_fermionic_bits",
               "S_free_fermion_bits", "spin_minus_ff_bits", "E_ed", "E_ff"},
              {}};
  struct Case {
    std::int64_t n;
    double lambda;
  };
  std::vector<Case> cases;
  for (const auto n : req.chain_sizes) {
    for (const auto lambda : req.lambdas) cases.push_back({n, lambda});
  }
  std::vector<std::vector<std::vector<Cell>>> per_case(cases.size());
  // ED is memory heavy; cases run one at a time.
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const auto [n, lambda] = cases[c];
    std::ostringstream where;
    where.precision(17);
    where << "n=" << n << ", lambda=" << lambda;
    at_point(where.str(), [&] {
      const FiniteChainSpec spec{n, lambda};
      const GroundState gs = ed_ground_state(spec);
      const SkewCorrMatrix gamma = ff_finite_correlations(spec);
      const double e_ff = ff_ground_energy(spec);
      std::vector<SubsystemMask> masks;
      for (std::int64_t L = 1; L <= 3; ++L) {
        if (L < n) masks.push_back(SubsystemMask::centered_block(n, L));
      }
      for (std::int64_t L = 1; L <= 2; ++L) {
        for (std::int64_t d = 1; d <= 2; ++d) {
          if (2 * L + d < n) masks.push_back(SubsystemMask::centered_two_block(n, L, d));
        }
      }
      for (const auto& mask : masks) {
        const double spin = reduced_entropy(gs, mask).bits;
        const double ferm = fermionic_reduced_entropy(gs, mask).bits;
        const double ff = ff_masked_entropy(gamma, mask).bits;
        const auto shape = mask.two_block_shape();
        // Contiguous masks: L is the block length and d stays empty.
        Cell lcell = static_cast<std::int64_t>(mask.sites().size());
        Cell dcell;
        if (shape && shape->d > 0) {
          lcell = shape->L;
          dcell = shape->d;
        }
        per_case[c].push_back({n, lambda, mask_label(mask), lcell, dcell, spin, ferm, ff, spin - ff,
                               gs.energy, e_ff});
      }
      return 0;
    });
  }
  for (auto& rows : per_case) {
    for (auto& r : rows) t.rows.push_back(std::move(r));
  }
  return t;
}

void write_cell(std::ostream& out, const Cell& cell) {
  std::visit(
      [&out](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
        } else if constexpr (std::is_same_v<T, double>) {
          out << std::setprecision(17) << v;
        } else if constexpr (std::is_same_v<T, std::string>) {
          out << '"' << v << '"';
        } else {
          out << v;
        }
      },
      cell);
}

}  // namespace

const char* command_name(ScanCommand c) {
  switch (c) {
    case ScanCommand::gl: return "gl";
    case ScanCommand::entropy: return "entropy";
    case ScanCommand::scan_lambda: return "scan-lambda";
    case ScanCommand::scan_d: return "scan-d";
    case ScanCommand::surface: return "surface";
    case ScanCommand::fit_k: return "fit-k";
    case ScanCommand::model_compare: return "model-compare";
    case ScanCommand::oracle_check: return "oracle-check";
  }
  return "unknown";
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  if (text.empty()) throw ValidationError("empty value list");
  for (const auto& item : split(text, ',')) {
    if (item.empty()) throw ValidationError("empty item in list '" + text + "'");
    const auto parts = split(item, ':');
    if (parts.size() == 1) {
      out.push_back(parse_number(parts[0]));
    } else if (parts.size() == 3) {
      const double start = parse_number(parts[0]);
      const double end = parse_number(parts[1]);
      const double count_d = parse_number(parts[2]);
      const auto count = as_integer(count_d, item);
      if (count < 2) throw ValidationError("range '" + item + "' needs count >= 2");
      if (count > 10'000'000) throw ValidationError("range '" + item + "' is too long");
      for (std::int64_t k = 0; k < count; ++k) {
        if (k == count - 1) {
          out.push_back(end);
        } else {
          out.push_back(start + (end - start) * static_cast<double>(k) / static_cast<double>(count - 1));
        }
      }
    } else {
      throw ValidationError("range '" + item + "' must be start:end:count");
    }
  }
  return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  if (text.empty()) throw ValidationError("empty value list");
  for (const auto& item : split(text, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() == 2) {
      const auto a = as_integer(parse_number(parts[0]), item);
      const auto b = as_integer(parse_number(parts[1]), item);
      if (b < a) throw ValidationError("range '" + item + "' is empty");
      for (auto v = a; v <= b; ++v) out.push_back(v);
      continue;
    }
    for (const double v : parse_real_list(item)) out.push_back(as_integer(v, item));
  }
  return out;
}

void ScanRequest::validate() const {
  auto nonneg_lambdas = [this] {
    require_nonempty("lambda", lambdas.empty());
    for (const double l : lambdas) {
      if (!(l >= 0.0)) throw ValidationError("lambda must be >= 0");
    }
  };
  auto block_grid = [this] {
    require_nonempty("L", block_sizes.empty());
    for (const auto L : block_sizes) {
      if (L < 1) throw ValidationError("L must be >= 1");
    }
  };
  auto distance_grid = [this] {
    require_nonempty("d", distances.empty());
    for (const auto d : distances) {
      if (d < 0) throw ValidationError("d must be >= 0");
    }
  };
  switch (command) {
    case ScanCommand::gl:
      nonneg_lambdas();
      if (l_max < 1) throw ValidationError("--l-max must be >= 1");
      break;
    case ScanCommand::entropy:
    case ScanCommand::scan_lambda:
    case ScanCommand::surface:
      nonneg_lambdas();
      block_grid();
      distance_grid();
      break;
    case ScanCommand::scan_d:
      nonneg_lambdas();
      block_grid();
      distance_grid();
      if (block_sizes.size() != 1) throw ValidationError("scan-d takes a single L");
      break;
    case ScanCommand::fit_k:
      if (fit_range.first < 1 || fit_range.second < 4 * fit_range.first) {
        throw ValidationError("fit range needs 1 <= L_min and L_max >= 4 L_min");
      }
      break;
    case ScanCommand::model_compare:
      block_grid();
      distance_grid();
      if (!k_given && (fit_range.first < 1 || fit_range.second < 4 * fit_range.first)) {
        throw ValidationError("fit range needs 1 <= L_min and L_max >= 4 L_min");
      }
      break;
    case ScanCommand::oracle_check:
      nonneg_lambdas();
      require_nonempty("n", chain_sizes.empty());
      for (const auto n : chain_sizes) {
        if (n < 3 || n > FiniteChainSpec::kMaxEdSites) {
          throw ValidationError("oracle-check chain size must be in [3, 14]");
        }
      }
      break;
  }
  if (threads < 1) throw ValidationError("thread count must be >= 1");
}

ScanTable evaluate_scan(const ScanRequest& req) {
  req.validate();
  switch (req.command) {
    case ScanCommand::gl: return gl_table(req);
    case ScanCommand::entropy:
    case ScanCommand::scan_lambda: return lambda_grid(req);
    case ScanCommand::scan_d: return d_scan(req);
    case ScanCommand::surface: return surface(req);
    case ScanCommand::fit_k: return fit_table(req);
    case ScanCommand::model_compare: return model_compare(req);
    case ScanCommand::oracle_check: return oracle_check(req);
  }
  throw ValidationError("unknown command");
}

std::string render_csv(const ScanTable& table) {
  std::ostringstream out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c != 0) out << ',';
    out << table.columns[c];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c != 0) out << ',';
      write_cell(out, row[c]);
    }
    out << '\n';
  }
  return out.str();
}

std::string render_json(const ScanTable& table, const ScanRequest& req) {
  nlohmann::ordered_json doc;
  doc["meta"]["command"] = command_name(req.command);
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [key, value] : req.params) params[key] = value;
  doc["meta"]["params"] = params;
  doc["meta"]["version"] = kVersion;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
              obj[table.columns[c]] = nullptr;
            } else {
              obj[table.columns[c]] = v;
            }
          },
          row[c]);
    }
    doc["rows"].push_back(std::move(obj));
  }
  return doc.dump(2) + "\n";
}

int run_scan(const ScanRequest& req, std::ostream& out, std::ostream& err) {
  std::string text;
  try {
    const ScanTable table = evaluate_scan(req);
    text = req.format == OutputFormat::csv ? render_csv(table) : render_json(table, req);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "numeric failure: " << e.what() << '\n';
    return 1;
  }
  if (req.output.empty() || req.output == "-") {
    out << text;
    out.flush();
    return 0;
  }
  std::ofstream file(req.output, std::ios::binary);
  if (!file) {
    err << "error: cannot open output file '" << req.output << "'\n";
    return 2;
  }
  file << text;
  return file.good() ? 0 : 1;
}

}  // namespace ising
