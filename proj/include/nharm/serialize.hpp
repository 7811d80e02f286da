#pragma once

#include <string>

#include "nharm/energy.hpp"
#include "nharm/spherical.hpp"
#include "nharm/variational.hpp"

namespace nharm {

/// JSON serializations. Field order is fixed and floats are printed with 17
/// significant digits, so identical inputs give byte-identical output.
/// Custom metrics are not serializable and throw.
std::string to_json(const RadialMetric& m);
std::string to_json(const EnergyReport& r);
std::string to_json(const HomothetySweep& s);
std::string solution_to_json(const RadialSolution& sol);

/// CSV exports: shortest round-trip float formatting.
std::string solution_csv(const RadialSolution& sol);            // t,H,dHdt,eta
std::string profile_csv(const DiscreteProfile& p);              // t,H
std::string sweep_csv(const HomothetySweep& s);                 // lambda,energy

/// Parses a metric descriptor, e.g. {"kind":"power","nu":-3.0} or
/// {"kind":"constant","value":2.0}.
RadialMetric metric_from_json(const std::string& text);

/// A profile artifact read back from disk (grid as written by
/// solution_to_json); used to re-run verification on stored results.
struct StoredProfile {
    int n = 0;
    RadialMetric metric = RadialMetric::constant();
    double c = 0.0;
    double R = 0.0;
    double R_star = 0.0;
    std::vector<double> t, H;
};
StoredProfile profile_from_json(const std::string& text);

/// Writes content to path via a temporary file and an atomic rename, so
/// failed runs leave no partial artifacts.
void atomic_write_file(const std::string& path, const std::string& content);

/// %.17g rendering used by the JSON writers.
std::string format_double(double v);

}  // namespace nharm
