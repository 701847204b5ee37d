#include "tkernel/snapshot.hpp"

#include <json.hpp>

#include "tkernel/error.hpp"

namespace tkernel {

namespace {

const char* variant_name(KernelVariant v) {
  return v == KernelVariant::CircleBernoulli ? "circle" : "general";
}

KernelVariant parse_variant(const std::string& name) {
  if (name == "circle") return KernelVariant::CircleBernoulli;
  if (name == "general") return KernelVariant::GeneralSeries;
  throw ConfigError("unknown kernel variant '" + name + "'");
}

}  // namespace

std::string dump_snapshot(const TKernelSgd& est) {
  const auto& fam = est.family();
  nlohmann::json j;
  j["format"] = "tkernel-snapshot/1";
  j["d"] = fam.dim();
  j["s"] = fam.s();
  j["variant"] = variant_name(fam.variant());
  j["theta"] = est.truncation().theta;
  j["gamma0"] = est.step_schedule().gamma0;
  j["t"] = est.step_schedule().t;
  j["n"] = est.iterations();
  j["L"] = est.level();
  j["fhat"] = std::vector<double>(est.fhat().coeffs().begin(), est.fhat().coeffs().end());
  j["fbar"] = std::vector<double>(est.fbar().coeffs().begin(), est.fbar().coeffs().end());
  j["counters"] = {{"updates", est.counters().updates}, {"storage", est.counters().storage}};
  return j.dump(2);
}

TKernelSgd load_snapshot(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    const KernelFamily fam(j.at("d").get<int>(), j.at("s").get<double>(),
                           parse_variant(j.at("variant").get<std::string>()));
    WorkCounters counters{j.at("counters").at("updates").get<std::uint64_t>(),
                          j.at("counters").at("storage").get<std::uint64_t>()};
    return TKernelSgd::restore(fam, TruncationSchedule(j.at("theta").get<double>()),
                               StepSchedule(j.at("gamma0").get<double>(), j.at("t").get<double>()),
                               j.at("n").get<std::int64_t>(), j.at("L").get<int>(),
                               j.at("fhat").get<std::vector<double>>(), j.at("fbar").get<std::vector<double>>(),
                               counters);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed snapshot: ") + e.what());
  }
}

}  // namespace tkernel
