#include "topent/separate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "topent/error.hpp"
#include "topent/numeric.hpp"

namespace topent {

PreparedLengths prepare_lengths(const Barcode& barcode) {
  const auto& bars = barcode.bars();
  if (bars.size() < 2) throw InputError("separation needs at least 2 bars");
  std::vector<std::size_t> order(bars.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double la = bars[a].length();
    const double lb = bars[b].length();
    if (la != lb) return la > lb;
    return bar_less(bars[a], bars[b]);
  });

  PreparedLengths out;
  out.t_bar = order.front();
  out.r_bar = order.back();
  out.profile.T = bars[out.t_bar].length();
  out.profile.r = bars[out.r_bar].length();
  for (std::size_t k = 1; k + 1 < order.size(); ++k) {
    out.body_bars.push_back(order[k]);
    out.profile.body.push_back(bars[order[k]].length());
  }
  return out;
}

std::size_t SeparationIteration::last_feature_index() const noexcept {
  std::size_t k = 0;
  while (k < rows.size() && rows[k].is_feature) ++k;
  return k;
}

SeparationIteration run_iteration(const LengthProfile& profile, int iteration_number) {
  validate(profile);
  const std::size_t n = profile.n();
  if (n < 3) throw InputError("run_iteration needs at least 3 lengths");
  const std::vector<double> lengths = profile.arranged();

  SeparationIteration it;
  it.iteration = iteration_number;
  it.n_prime = n;
  it.alpha = profile.alpha();
  it.q = q_bound(n, it.alpha);

  double max_entropy = persistent_entropy(max_entropy_barcode(n, profile.T, profile.r));
  auto relative = [&](double e) { return max_entropy == 0.0 ? 1.0 : e / max_entropy; };
  it.rel_entropy_start = relative(persistent_entropy(lengths));

  double previous_total = compensated_sum(lengths);
  std::vector<double> neutralized;
  for (std::size_t i = 1; i + 2 <= n; ++i) {
    const NeutralizationState state = neutralize_prefix(lengths, i);
    neutralized.assign(i, state.replaced_value);
    neutralized.insert(neutralized.end(), lengths.begin() + static_cast<std::ptrdiff_t>(i),
                       lengths.end());

    SeparationRow row;
    row.index = i;
    row.length = lengths[i - 1];
    row.replaced = state.replaced_value;
    row.ratio = previous_total / state.total;
    row.rel_entropy = relative(persistent_entropy(neutralized));
    row.is_feature = row.ratio >= 1.0 - kRatioTolerance;
    it.rows.push_back(row);
    previous_total = state.total;
    if (!row.is_feature) break;
  }
  return it;
}

namespace {

struct SeparationOutcome {
  std::vector<SeparationIteration> iterations;
  std::size_t retained = 0;  // leading body entries reported as features
  bool r_is_feature = false;
};

SeparationOutcome run_separation(const LengthProfile& profile) {
  validate(profile);
  if (profile.n() < 3) throw InputError("separation needs at least 3 bars");
  SeparationOutcome out;
  out.r_is_feature = std::abs(profile.alpha() - 1.0) <= 1e-12;

  LengthProfile current = profile;
  while (true) {
    if (current.n() < 3) {
      out.retained = current.body.size();
      break;
    }
    const int number = static_cast<int>(out.iterations.size()) + 1;
    if (number > kMaxSeparationIterations) {
      SeparationResult partial;
      partial.iterations = out.iterations;
      throw InternalError("separation exceeded " + std::to_string(kMaxSeparationIterations) +
                          " iterations; trace:\n" +
                          render_trace(partial, TraceFormat::kText));
    }
    out.iterations.push_back(run_iteration(current, number));
    const SeparationIteration& it = out.iterations.back();
    const std::size_t last_feature = it.last_feature_index();
    out.retained = last_feature;
    if (it.q >= it.stop_index()) break;
    if (last_feature == current.body.size()) break;  // n' would not change
    current.body.resize(last_feature);
  }
  return out;
}

}  // namespace

SeparationResult separate_lengths(const LengthProfile& profile) {
  SeparationOutcome outcome = run_separation(profile);
  SeparationResult result;
  result.iterations = std::move(outcome.iterations);
  result.feature_lengths.push_back(profile.T);
  result.feature_lengths.insert(result.feature_lengths.end(), profile.body.begin(),
                                profile.body.begin() +
                                    static_cast<std::ptrdiff_t>(outcome.retained));
  if (outcome.r_is_feature) result.feature_lengths.push_back(profile.r);
  return result;
}

SeparationResult separate_features(const Barcode& barcode) {
  if (barcode.size() < 3) throw InputError("separation needs at least 3 bars");
  const PreparedLengths prepared = prepare_lengths(barcode);
  SeparationOutcome outcome = run_separation(prepared.profile);

  std::vector<bool> is_feature(barcode.size(), false);
  is_feature[prepared.t_bar] = true;
  for (std::size_t k = 0; k < outcome.retained; ++k) is_feature[prepared.body_bars[k]] = true;
  if (outcome.r_is_feature) is_feature[prepared.r_bar] = true;

  SeparationResult result;
  result.iterations = std::move(outcome.iterations);
  result.feature_lengths.push_back(prepared.profile.T);
  for (std::size_t k = 0; k < outcome.retained; ++k) {
    result.feature_lengths.push_back(prepared.profile.body[k]);
  }
  if (outcome.r_is_feature) result.feature_lengths.push_back(prepared.profile.r);

  const auto& bars = barcode.bars();
  for (std::size_t k = 0; k < bars.size(); ++k) {
    (is_feature[k] ? result.feature_bars : result.noise_bars).push_back(bars[k]);
  }
  return result;
}

namespace {

std::string fmt(double x) { return format_double(x); }

void write_bar_json(std::ostream& out, const Bar& bar) {
  out << "{\"dim\": " << bar.dim << ", \"birth\": " << fmt(bar.birth)
      << ", \"death\": " << fmt(bar.death)
      << ", \"essential\": " << (bar.essential ? "true" : "false") << '}';
}

template <typename T, typename Writer>
void write_array(std::ostream& out, const std::vector<T>& items, const std::string& indent,
                 Writer write) {
  if (items.empty()) {
    out << "[]";
    return;
  }
  out << '[';
  for (std::size_t k = 0; k < items.size(); ++k) {
    out << (k ? ",\n" : "\n") << indent << "  ";
    write(items[k]);
  }
  out << '\n' << indent << ']';
}

std::string render_json(const SeparationResult& result) {
  std::ostringstream out;
  out << "{\n  \"iterations\": ";
  write_array(out, result.iterations, "  ", [&](const SeparationIteration& it) {
    out << "{\"iteration\": " << it.iteration << ", \"n_prime\": " << it.n_prime
        << ", \"Q\": " << it.q << ", \"rel_entropy_start\": " << fmt(it.rel_entropy_start)
        << ", \"alpha\": " << fmt(it.alpha) << ",\n      \"rows\": ";
    write_array(out, it.rows, "      ", [&](const SeparationRow& row) {
      out << "{\"i\": " << row.index << ", \"length\": " << fmt(row.length)
          << ", \"replaced\": " << fmt(row.replaced) << ", \"C\": " << fmt(row.ratio)
          << ", \"rel_entropy\": " << fmt(row.rel_entropy)
          << ", \"feature\": " << (row.is_feature ? "true" : "false") << '}';
    });
    out << '}';
  });
  out << ",\n  \"feature_lengths\": ";
  write_array(out, result.feature_lengths, "  ", [&](double l) { out << fmt(l); });
  out << ",\n  \"feature_bars\": ";
  write_array(out, result.feature_bars, "  ", [&](const Bar& b) { write_bar_json(out, b); });
  out << ",\n  \"noise_bars\": ";
  write_array(out, result.noise_bars, "  ", [&](const Bar& b) { write_bar_json(out, b); });
  out << "\n}\n";
  return out.str();
}

std::string render_csv(const SeparationResult& result) {
  std::ostringstream out;
  for (const SeparationIteration& it : result.iterations) {
    out << "H," << it.iteration << ',' << it.n_prime << ',' << it.q << ','
        << fmt(it.rel_entropy_start) << ',' << fmt(it.alpha) << '\n';
    for (const SeparationRow& row : it.rows) {
      out << "R," << it.iteration << ',' << row.index << ',' << fmt(row.length) << ','
          << fmt(row.replaced) << ',' << fmt(row.ratio) << ',' << fmt(row.rel_entropy) << ','
          << (row.is_feature ? 1 : 0) << '\n';
    }
  }
  return out.str();
}

std::string render_text(const SeparationResult& result) {
  std::ostringstream out;
  for (const SeparationIteration& it : result.iterations) {
    out << "Iteration\tn'\tQ\tE(L')/E(M')\talpha\n";
    out << it.iteration << '\t' << it.n_prime << '\t' << it.q << '\t'
        << fmt(it.rel_entropy_start) << '\t' << fmt(it.alpha) << '\n';
    out << "l_i\tl'_i\tC\tE(L'_i)/E(M')\tFeature?\n";
    for (const SeparationRow& row : it.rows) {
      out << fmt(row.length) << '\t' << fmt(row.replaced) << '\t' << fmt(row.ratio) << '\t'
          << fmt(row.rel_entropy) << '\t' << (row.is_feature ? "yes" : "no") << '\n';
    }
    out << '\n';
  }
  if (!result.feature_bars.empty() || !result.noise_bars.empty()) {
    out << "features: " << result.feature_bars.size() << '\n';
    for (const Bar& bar : result.feature_bars) {
      out << "dim " << bar.dim << "\t[" << fmt(bar.birth) << ", " << fmt(bar.death) << ")\t"
          << fmt(bar.length()) << (bar.essential ? "\tessential" : "") << '\n';
    }
    out << "noise: " << result.noise_bars.size() << '\n';
  } else if (!result.feature_lengths.empty()) {
    out << "features: " << result.feature_lengths.size() << '\n';
    for (double l : result.feature_lengths) out << fmt(l) << '\n';
  }
  return out.str();
}

Bar parse_bar(const nlohmann::json& j) {
  return Bar{j.at("dim").get<int>(), j.at("birth").get<double>(), j.at("death").get<double>(),
             j.at("essential").get<bool>()};
}

}  // namespace

std::string render_trace(const SeparationResult& result, TraceFormat format) {
  switch (format) {
    case TraceFormat::kText: return render_text(result);
    case TraceFormat::kJson: return render_json(result);
    case TraceFormat::kCsv: return render_csv(result);
  }
  throw InputError("unknown trace format");
}

SeparationResult parse_trace_json(std::istream& in) {
  try {
    const nlohmann::json doc = nlohmann::json::parse(in);
    SeparationResult result;
    for (const auto& ji : doc.at("iterations")) {
      SeparationIteration it;
      it.iteration = ji.at("iteration").get<int>();
      it.n_prime = ji.at("n_prime").get<std::size_t>();
      it.q = ji.at("Q").get<std::size_t>();
      it.rel_entropy_start = ji.at("rel_entropy_start").get<double>();
      it.alpha = ji.at("alpha").get<double>();
      for (const auto& jr : ji.at("rows")) {
        it.rows.push_back(SeparationRow{jr.at("i").get<std::size_t>(),
                                        jr.at("length").get<double>(),
                                        jr.at("replaced").get<double>(),
                                        jr.at("C").get<double>(),
                                        jr.at("rel_entropy").get<double>(),
                                        jr.at("feature").get<bool>()});
      }
      result.iterations.push_back(std::move(it));
    }
    for (const auto& l : doc.at("feature_lengths")) result.feature_lengths.push_back(l.get<double>());
    for (const auto& b : doc.at("feature_bars")) result.feature_bars.push_back(parse_bar(b));
    for (const auto& b : doc.at("noise_bars")) result.noise_bars.push_back(parse_bar(b));
    return result;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("trace JSON: ") + e.what());
  }
}

}  // namespace topent
