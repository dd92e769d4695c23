#include "qwalk/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "qwalk/error.hpp"

namespace qwalk {

double compensated_sum(std::span<const double> values) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

double Distribution::total() const { return compensated_sum(probs); }

double Distribution::at(std::int64_t position) const {
  auto it = std::lower_bound(support.begin(), support.end(), position);
  if (it == support.end() || *it != position) return 0.0;
  return probs[static_cast<std::size_t>(it - support.begin())];
}

std::vector<std::int64_t> parity_support(std::int64_t n) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(n + 1));
  for (std::int64_t i = 0; i <= n; ++i) out[static_cast<std::size_t>(i)] = -n + 2 * i;
  return out;
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_csv(std::ostream& out, const Distribution& dist) {
  out << "position,probability\n";
  for (std::size_t i = 0; i < dist.size(); ++i) {
    out << dist.support[i] << ',' << format_double(dist.probs[i]) << '\n';
  }
}

std::string to_json(const Distribution& dist) {
  // nlohmann prints doubles with round-trip precision.
  nlohmann::json j;
  j["n"] = dist.time;
  j["support"] = dist.support;
  j["probs"] = dist.probs;
  return j.dump();
}

Distribution distribution_from_json(const std::string& text) {
  try {
    auto j = nlohmann::json::parse(text);
    Distribution d;
    d.time = j.at("n").get<std::int64_t>();
    d.support = j.at("support").get<std::vector<std::int64_t>>();
    d.probs = j.at("probs").get<std::vector<double>>();
    if (d.support.size() != d.probs.size()) {
      throw Error(ErrorKind::ParseError, "support/probs length mismatch");
    }
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

}  // namespace qwalk
