#pragma once

#include "dyndeg/cli.hpp"
#include "dyndeg/cyclelat.hpp"
#include "dyndeg/relative.hpp"

#include <random>
#include <sstream>

namespace dyndeg::cli {

inline constexpr const char *kExact = "EXACT";
inline constexpr const char *kCertified = "CERTIFIED_INTERVAL";
inline constexpr const char *kHeuristic = "HEURISTIC";

// Integers that fit a long become JSON numbers, larger ones decimal strings.
Json int_value(const Int &z);
Json rat_value(const Rat &q);
Json exact(const Int &z);
Json exact(const Rat &q);
Json exact_matrix(const IntMatrix &m);
Json exact_matrix(const RatMatrix &m);
Json interval(const Interval &v, const char *flag);
Json int_list(const std::vector<Int> &v);

std::string fmt(double x, int digits = 6);
std::string fmt(const Interval &v, int digits = 6);

// Input readers; errors name the JSON path.
Int read_int(const Json &j, const std::string &path);
Rat read_rat(const Json &j, const std::string &path);
IntMatrix read_int_matrix(const Json &j, const std::string &path);
RatMatrix read_rat_matrix(const Json &j, const std::string &path);
std::vector<Rat> read_rat_vector(const Json &j, const std::string &path);
const Json &require(const Json &obj, const std::string &key, const std::string &path = "");

AmbientSpace read_space(const JobSpec &job);
// Parses payload["map"]; polynomial errors become JobParseError located in
// the job text.
RationalMap read_map(const JobSpec &job, const AmbientSpace &space);

// Uniform integer in [lo, hi], identical on every platform.
long draw(std::mt19937_64 &rng, long lo, long hi);

Json lambda_json(const Lambda1Report &rep);
Json options_json(const JobOptions &o);

} // namespace dyndeg::cli
