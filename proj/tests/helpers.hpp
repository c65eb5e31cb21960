#pragma once

#include <initializer_list>
#include <string>

#include "rbsc/instance_io.hpp"
#include "rbsc/model.hpp"
#include "rbsc/oracle.hpp"

namespace testing {

inline rbsc::Instance parse(const std::string& body) { return rbsc::parse_instance_text("rbsc 1\n" + body); }

inline rbsc::Point point(std::initializer_list<long> coords, rbsc::Color c = rbsc::Color::Blue) {
  rbsc::Point p;
  for (long v : coords) p.coords.emplace_back(v);
  p.color = c;
  return p;
}

inline bool oracle_yes(const rbsc::Instance& inst) {
  const auto r = rbsc::oracle::brute_force_min_reds(inst);
  return r.optimum && (!inst.budget || *r.optimum <= *inst.budget);
}

}  // namespace testing
