// Copyright 2026 The xbsched Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "xbsched/milp/lp_format.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace xb::milp {

namespace {

std::string sanitize(const std::string& name, char prefix, int index) {
  if (name.empty()) return std::string(1, prefix) + std::to_string(index);
  std::string out;
  out.reserve(name.size());
  for (char c : name) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
    out.push_back(ok ? c : '_');
  }
  if (std::isdigit(static_cast<unsigned char>(out.front())) || out.front() == '.' ||
      out.front() == 'e' || out.front() == 'E') {
    out.insert(out.begin(), prefix);
  }
  return out;
}

std::string number(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

class LineWriter {
 public:
  explicit LineWriter(std::ostream& out) : out_(out) {}
  void put(const std::string& tok) {
    if (width_ + tok.size() + 1 > 240) {
      out_ << "\n   ";
      width_ = 3;
    }
    out_ << ' ' << tok;
    width_ += tok.size() + 1;
  }
  void end() {
    out_ << '\n';
    width_ = 0;
  }

 private:
  std::ostream& out_;
  std::size_t width_ = 0;
};

void write_terms(LineWriter& w, const std::vector<std::pair<double, std::string>>& terms) {
  bool first = true;
  for (const auto& [coef, name] : terms) {
    if (coef == 0.0) continue;
    const std::string sign = coef < 0 ? "-" : (first ? "" : "+");
    if (!sign.empty()) w.put(sign);
    w.put(number(std::abs(coef)) + " " + name);
    first = false;
  }
  if (first) w.put("0");
}

}  // namespace

void write_lp_format(const MilpModel& model, std::ostream& out) {
  std::vector<std::string> names(model.num_variables());
  for (int j = 0; j < model.num_variables(); ++j) names[j] = sanitize(model.variable(j).name, 'x', j);

  out << "\\ " << model.num_variables() << " variables, " << model.num_constraints()
      << " constraints\n";
  out << "Minimize\n";
  LineWriter w(out);
  w.put("obj:");
  std::vector<std::pair<double, std::string>> obj;
  for (int j = 0; j < model.num_variables(); ++j) obj.emplace_back(model.variable(j).objective, names[j]);
  write_terms(w, obj);
  if (model.objective_offset() != 0.0) {
    w.put(model.objective_offset() < 0 ? "-" : "+");
    w.put(number(std::abs(model.objective_offset())));
  }
  w.end();

  out << "Subject To\n";
  for (int i = 0; i < model.num_constraints(); ++i) {
    const auto& c = model.constraint(i);
    w.put(sanitize(c.name, 'c', i) + ":");
    std::vector<std::pair<double, std::string>> terms;
    for (const auto& t : c.terms) terms.emplace_back(t.coef, names[t.var]);
    write_terms(w, terms);
    switch (c.relation) {
      case Relation::kLessEqual: w.put("<="); break;
      case Relation::kGreaterEqual: w.put(">="); break;
      case Relation::kEqual: w.put("="); break;
    }
    w.put(number(c.rhs));
    w.end();
  }

  out << "Bounds\n";
  for (int j = 0; j < model.num_variables(); ++j) {
    const auto& v = model.variable(j);
    const bool lo_inf = std::isinf(v.lower);
    const bool hi_inf = std::isinf(v.upper);
    if (lo_inf && hi_inf) {
      out << ' ' << names[j] << " free\n";
    } else if (v.lower == v.upper) {
      out << ' ' << names[j] << " = " << number(v.lower) << '\n';
    } else {
      out << ' ' << (lo_inf ? "-inf" : number(v.lower)) << " <= " << names[j] << " <= "
          << (hi_inf ? "+inf" : number(v.upper)) << '\n';
    }
  }

  bool any_int = false;
  for (const auto& v : model.variables()) any_int = any_int || v.is_integer;
  if (any_int) {
    out << "General\n";
    for (int j = 0; j < model.num_variables(); ++j) {
      if (model.variable(j).is_integer) w.put(names[j]);
    }
    w.end();
  }
  out << "End\n";
}

std::string to_lp_format(const MilpModel& model) {
  std::ostringstream os;
  write_lp_format(model, os);
  return os.str();
}

}  // namespace xb::milp
