#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "alea/dist.hpp"
#include "alea/error.hpp"
#include "alea/type.hpp"
#include "alea/value.hpp"

namespace alea {

using VarId = std::string;
using FunId = std::string;
using DistId = std::string;

enum class ExprKind {
  Var,
  Const,
  App,
  Choose,
  Exp,
  DistDraw,
  Let,
  NSwitch,
  Iter,
  Tuple,
  Select,
  Cons,
  CSwitch,
};

class Expr;
struct ExprRep;

// Numeric switch cases: exact rational keys plus an optional default.
using NCases = std::map<Rational, Expr, RationalLess>;

// One case handler: payload variable and body.
struct CHandler;

// Immutable core expression; shared, cheap to copy. Whether a subtree is
// s-deterministic (free of Choose, Exp and DistDraw) is cached at
// construction.
class Expr {
 public:
  static Expr var(VarId x, SourcePos pos = {});
  static Expr cnst(Val v, Type t, SourcePos pos = {});
  static Expr cnst(Val v, SourcePos pos = {});  // type = least_type_of
  static Expr app(FunId f, Expr arg, SourcePos pos = {});
  // Weights must be positive rationals summing to exactly 1.
  static Expr choose(std::vector<std::pair<Expr, Rational>> branches,
                     SourcePos pos = {});
  static Expr expect(Expr e, SourcePos pos = {});
  static Expr dist_draw(DistId d, Expr param, SourcePos pos = {});
  static Expr let(Expr bound, VarId x, Expr body, SourcePos pos = {});
  static Expr nswitch(Expr scrutinee, NCases cases,
                      std::optional<Expr> dflt, SourcePos pos = {});
  static Expr iter(Expr source, VarId x, Expr body, Shape shape,
                   SourcePos pos = {});
  static Expr tuple(std::map<FieldId, Expr> fields, SourcePos pos = {});
  static Expr select(Expr e, FieldId f, SourcePos pos = {});
  static Expr cons(CaseId c, Expr payload, SourcePos pos = {});
  static Expr cswitch(Expr scrutinee, std::map<CaseId, CHandler> handlers,
                      std::optional<Expr> dflt, SourcePos pos = {});

  ExprKind kind() const;
  SourcePos pos() const;
  bool s_deterministic() const;

  // Accessors; each has the obvious kind precondition.
  const VarId& var_name() const;
  const Val& const_val() const;
  const Type& const_type() const;
  const FunId& fun() const;
  const Expr& arg() const;
  const std::vector<std::pair<Expr, Rational>>& branches() const;
  const Expr& inner() const;  // Exp body, Select base, Cons payload
  const DistId& dist_id() const;
  const Expr& bound() const;      // Let
  const VarId& let_var() const;   // Let
  const Expr& body() const;       // Let, Iter
  const Expr& scrutinee() const;  // NSwitch, CSwitch
  const NCases& ncases() const;
  const std::optional<Expr>& dflt() const;  // NSwitch, CSwitch
  const Expr& source() const;               // Iter
  const VarId& iter_var() const;            // Iter
  Shape iter_shape() const;                 // Iter
  const std::map<FieldId, Expr>& tuple_fields() const;
  const FieldId& field() const;  // Select
  const CaseId& case_id() const;  // Cons
  const std::map<CaseId, CHandler>& handlers() const;  // CSwitch

  // Structural equality (positions ignored).
  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

 private:
  explicit Expr(std::shared_ptr<const ExprRep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const ExprRep> rep_;
  friend struct ExprMaker;
  friend struct ExprAccess;
};

struct CHandler {
  VarId var;
  Expr body;
};

std::set<VarId> free_vars(const Expr& e);

// Stable, human-readable serialization used in golden tests and
// diagnostics. Line oriented s-expressions.
std::string to_sexpr(const Expr& e);

// Persistent runtime environment; extension is O(1), lookup walks the
// spine (variable scopes are shallow).
class Env {
 public:
  Env() = default;
  Env bind(VarId x, Val v) const;
  const Val* lookup(const VarId& x) const;

 private:
  struct Node {
    VarId name;
    Val val;
    std::shared_ptr<const Node> parent;
  };
  std::shared_ptr<const Node> head_;
};

class TypeEnv {
 public:
  TypeEnv() = default;
  TypeEnv bind(VarId x, Type t) const;
  const Type* lookup(const VarId& x) const;

 private:
  struct Node {
    VarId name;
    Type type;
    std::shared_ptr<const Node> parent;
  };
  std::shared_ptr<const Node> head_;
};

}  // namespace alea
