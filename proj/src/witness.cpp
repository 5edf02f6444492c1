#include "ftpcm/witness.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ftpcm {

GeneratorSet generator_set(int n) {
  GeneratorSet set;
  set.n = n;
  if (n == 4) {
    set.conditional_g4_sign = true;
    set.generators = {
        PauliString::parse("+XXII"),  // X1 X2
        PauliString::parse("-IXXI"),  // -X2 X3
        PauliString::parse("+IIXX"),  // X3 X4
        PauliString::parse("+ZZZZ"),  // +/- Z1 Z2 Z3 Z4, sign follows M_s^(X)
    };
    for (auto& g : set.generators) {
      PauliString padded(kRegisterSize);
      for (std::size_t q = 0; q < 4; ++q) padded.at(q) = g.at(q);
      padded.set_phase_pow(g.phase_pow());
      g = padded;
    }
  } else if (n == 6) {
    set.generators = {
        PauliString::parse("-IIXIXI"),  // -X3 Xs
        PauliString::parse("-IIIXXI"),  // -X4 Xs
        PauliString::parse("-XIIIXX"),  // -X1 Xs Xf
        PauliString::parse("-IXIIXX"),  // -X2 Xs Xf
        PauliString::parse("+ZZIIIY"),  // Z1 Z2 Yf
        PauliString::parse("+ZZZZZI"),  // Z1 Z2 Z3 Z4 Zs
    };
  } else {
    throw std::invalid_argument("generator_set supports n = 4 or 6");
  }
  return set;
}

Setting measurement_setting(const PauliString& g) {
  Setting s{};
  for (int q = 0; q < kRegisterSize; ++q) {
    switch (g.at(q)) {
      case Pauli::X: s[q] = MeasBasis::X; break;
      case Pauli::Y: s[q] = MeasBasis::Y; break;
      default: s[q] = MeasBasis::Z; break;
    }
  }
  return s;
}

GeneratorEstimate estimate_generator(const ShotTallies& tallies, const PauliString& g) {
  std::vector<int> support;
  for (int q = 0; q < kRegisterSize; ++q) {
    if (g.at(q) != Pauli::I) support.push_back(q);
  }
  if (support.empty()) throw std::invalid_argument("generator has empty support");
  const double sign = g.phase().real();
  GeneratorEstimate est;
  est.generator = g;
  est.shots = tallies.shots;
  est.value = sign * tallies.product_mean(support);
  est.stderr_ = std::sqrt(std::max(0.0, 1.0 - est.value * est.value) /
                          static_cast<double>(tallies.shots));
  return est;
}

WitnessReport witness_value(const std::vector<ShotTallies>& tallies_per_generator,
                            const GeneratorSet& set, double k_sigma) {
  if (tallies_per_generator.size() != set.generators.size()) {
    throw std::invalid_argument("need one tallies block per generator");
  }
  WitnessReport rep;
  rep.n = set.n;
  rep.threshold = (set.n - 1.0) / set.n;
  rep.k_sigma = k_sigma;
  double sum = 0.0;
  double var = 0.0;
  for (std::size_t i = 0; i < set.generators.size(); ++i) {
    auto est = estimate_generator(tallies_per_generator[i], set.generators[i]);
    sum += est.value;
    var += est.stderr_ * est.stderr_;
    rep.generators.push_back(std::move(est));
  }
  rep.witness = rep.threshold - sum / set.n;
  rep.witness_stderr = std::sqrt(var) / set.n;
  rep.certified = certify_gme(rep, k_sigma);
  return rep;
}

bool certify_gme(const WitnessReport& report, double k_sigma) {
  return report.witness + k_sigma * report.witness_stderr < 0.0;
}

double witness_expectation(const StateVector& state, const GeneratorSet& set) {
  double sum = 0.0;
  for (const auto& g : set.generators) sum += state.expectation_pauli(g);
  return (set.n - 1.0) / set.n - sum / set.n;
}

std::string WitnessReport::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["threshold"] = threshold;
  j["witness"] = witness;
  j["witness_stderr"] = witness_stderr;
  j["k_sigma"] = k_sigma;
  j["certified"] = certified;
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : generators) {
    gens.push_back({{"generator", g.generator.to_string()},
                    {"value", g.value},
                    {"stderr", g.stderr_},
                    {"shots", g.shots}});
  }
  j["generators"] = std::move(gens);
  return j.dump(2);
}

std::string WitnessReport::to_csv() const {
  std::ostringstream out;
  out << "generator,value,stderr,shots\n";
  for (const auto& g : generators) {
    out << g.generator.to_string() << "," << g.value << "," << g.stderr_ << "," << g.shots
        << "\n";
  }
  std::uint64_t total = 0;
  for (const auto& g : generators) total += g.shots;
  out << "witness," << witness << "," << witness_stderr << "," << total << "\n";
  return out.str();
}

}  // namespace ftpcm
