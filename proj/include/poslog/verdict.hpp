#pragma once

// Three-valued results for bounded semantic questions. A Fails always
// carries a checkable witness; UnknownAtBound always carries the bound.

#include "poslog/model.hpp"

namespace poslog {

enum class Status { Holds, Fails, UnknownAtBound };

std::string to_string(Status s);

struct Verdict {
  Status status = Status::UnknownAtBound;
  int bound = -1;
  std::string pool_desc;           // pool parameters the verdict is relative to
  std::vector<std::string> notes;  // e.g. the ground-refutation flag

  // Witness payload; which fields are set depends on the operation.
  std::optional<Formula> phi;
  std::optional<Formula> psi;
  std::optional<Structure> model;
  std::optional<StructureMap> map1;
  std::optional<StructureMap> map2;
  std::optional<Assignment> assignment;
  std::optional<std::vector<int>> indices;

  bool holds() const { return status == Status::Holds; }
  bool fails() const { return status == Status::Fails; }
  bool unknown() const { return status == Status::UnknownAtBound; }

  static Verdict mk_holds(int bound = -1) {
    Verdict v;
    v.status = Status::Holds;
    v.bound = bound;
    return v;
  }
  static Verdict mk_fails(int bound = -1) {
    Verdict v;
    v.status = Status::Fails;
    v.bound = bound;
    return v;
  }
  static Verdict mk_unknown(int bound) {
    Verdict v;
    v.status = Status::UnknownAtBound;
    v.bound = bound;
    return v;
  }
};

}  // namespace poslog
