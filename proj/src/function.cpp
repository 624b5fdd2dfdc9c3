#include "gqtoda/function.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <utility>
#include <vector>

namespace gqtoda {
namespace detail {

enum class Kind { Constant, X, T, Named, Linear, Product, Reciprocal, Exp, Log, Shift, TimeDerivative, TimeScale };

using NodePtr = std::shared_ptr<const Node>;

namespace {

std::uint64_t mix(std::uint64_t h) {
  h += 0x9e3779b97f4a7c15ULL;
  h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
  h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
  return h ^ (h >> 31);
}

std::uint64_t hash_double(double d) {
  if (d == 0.0) d = 0.0;  // -0 == +0
  return mix(std::bit_cast<std::uint64_t>(d));
}

std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) { return mix(a ^ (b + 0x632be59bd9b4e019ULL + (a << 6))); }

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string shifted_argument(int k) {
  if (k == 0) return "x";
  const std::string mag = std::abs(k) == 1 ? "eps*x" : std::to_string(std::abs(k)) + "*eps*x";
  return std::string("x/(1") + (k > 0 ? "-" : "+") + mag + ")";
}

}  // namespace

// Print precedence: 1 sum, 2 product, 3 atom.
class Node {
 public:
  Node(Kind kind, std::uint64_t hash, bool dx, bool dt) : kind_(kind), hash_(hash), depends_x_(dx), depends_t_(dt) {}
  virtual ~Node() = default;

  virtual double value(double x, double t) const = 0;
  virtual Jet jet(double x, double t) const = 0;
  virtual void print(std::ostream& os) const = 0;
  virtual int precedence() const { return 3; }
  // Called only when kinds and hashes agree.
  virtual bool same(const Node& other) const = 0;

  Kind kind() const { return kind_; }
  std::uint64_t hash() const { return hash_; }
  bool depends_x() const { return depends_x_; }
  bool depends_t() const { return depends_t_; }

 private:
  Kind kind_;
  std::uint64_t hash_;
  bool depends_x_;
  bool depends_t_;
};

bool equal(const Node& a, const Node& b) {
  if (&a == &b) return true;
  if (a.kind() != b.kind() || a.hash() != b.hash()) return false;
  return a.same(b);
}

void print_child(std::ostream& os, const Node& child, int parent_prec) {
  if (child.precedence() < parent_prec) {
    os << '(';
    child.print(os);
    os << ')';
  } else {
    child.print(os);
  }
}

namespace {

class ConstantNode final : public Node {
 public:
  explicit ConstantNode(double c) : Node(Kind::Constant, hash_combine(1, hash_double(c)), false, false), c_(c) {}
  double value(double, double) const override { return c_; }
  Jet jet(double, double) const override { return taylor_constant<double, kTaylorOrder + 1>(c_); }
  void print(std::ostream& os) const override { os << format_number(c_); }
  int precedence() const override { return c_ < 0 ? 1 : 3; }
  bool same(const Node& o) const override { return static_cast<const ConstantNode&>(o).c_ == c_; }
  double c() const { return c_; }

 private:
  double c_;
};

class XNode final : public Node {
 public:
  XNode() : Node(Kind::X, mix(2), true, false) {}
  double value(double x, double) const override { return x; }
  Jet jet(double x, double) const override { return taylor_constant<double, kTaylorOrder + 1>(x); }
  void print(std::ostream& os) const override { os << 'x'; }
  bool same(const Node&) const override { return true; }
};

class TNode final : public Node {
 public:
  TNode() : Node(Kind::T, mix(3), false, true) {}
  double value(double, double t) const override { return t; }
  Jet jet(double, double t) const override {
    Jet j = Jet::Zero();
    j[0] = t;
    j[1] = 1.0;
    return j;
  }
  void print(std::ostream& os) const override { os << 't'; }
  bool same(const Node&) const override { return true; }
};

std::uint64_t hash_string(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
  return mix(h);
}

class NamedNode final : public Node {
 public:
  NamedNode(std::string name, NodePtr body)
      : Node(Kind::Named, hash_combine(hash_string(name), body->hash()), body->depends_x(), body->depends_t()),
        name_(std::move(name)),
        body_(std::move(body)) {}
  double value(double x, double t) const override { return body_->value(x, t); }
  Jet jet(double x, double t) const override { return body_->jet(x, t); }
  void print(std::ostream& os) const override { os << name_ << "(x)"; }
  bool same(const Node& o) const override {
    const auto& n = static_cast<const NamedNode&>(o);
    return n.name_ == name_ && equal(*n.body_, *body_);
  }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  NodePtr body_;
};

using Term = std::pair<double, NodePtr>;

// Order-independent multiset comparison.
template <typename Item, typename HashOf, typename Eq>
bool same_multiset(std::vector<Item> a, std::vector<Item> b, HashOf hash_of, Eq eq) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& ia : a) {
    bool found = false;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!used[j] && hash_of(ia) == hash_of(b[j]) && eq(ia, b[j])) {
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

class LinearNode final : public Node {
 public:
  LinearNode(double offset, std::vector<Term> terms, std::uint64_t hash, bool dx, bool dt)
      : Node(Kind::Linear, hash, dx, dt), offset_(offset), terms_(std::move(terms)) {}

  double value(double x, double t) const override {
    double s = offset_;
    for (const auto& [w, n] : terms_) s += w * n->value(x, t);
    return s;
  }
  Jet jet(double x, double t) const override {
    Jet s = taylor_constant<double, kTaylorOrder + 1>(offset_);
    for (const auto& [w, n] : terms_) s += w * n->jet(x, t);
    return s;
  }
  int precedence() const override { return 1; }
  void print(std::ostream& os) const override {
    bool first = true;
    for (const auto& [w, n] : terms_) {
      const bool neg = w < 0;
      const double mag = std::abs(w);
      if (first) {
        if (neg) os << '-';
      } else {
        os << (neg ? " - " : " + ");
      }
      if (mag != 1.0) {
        os << format_number(mag) << '*';
        print_child(os, *n, 3);
      } else {
        print_child(os, *n, first && neg ? 3 : 2);
      }
      first = false;
    }
    if (offset_ != 0.0 || first) {
      if (first) {
        os << format_number(offset_);
      } else {
        os << (offset_ < 0 ? " - " : " + ") << format_number(std::abs(offset_));
      }
    }
  }
  bool same(const Node& o) const override {
    const auto& l = static_cast<const LinearNode&>(o);
    if (l.offset_ != offset_) return false;
    return same_multiset(
        terms_, l.terms_, [](const Term& t) { return t.second->hash(); },
        [](const Term& a, const Term& b) { return a.first == b.first && equal(*a.second, *b.second); });
  }
  double offset() const { return offset_; }
  const std::vector<Term>& terms() const { return terms_; }

 private:
  double offset_;
  std::vector<Term> terms_;
};

class ProductNode final : public Node {
 public:
  ProductNode(std::vector<NodePtr> factors, std::uint64_t hash, bool dx, bool dt)
      : Node(Kind::Product, hash, dx, dt), factors_(std::move(factors)) {}

  double value(double x, double t) const override {
    double p = 1.0;
    for (const auto& f : factors_) p *= f->value(x, t);
    return p;
  }
  Jet jet(double x, double t) const override {
    Jet p = factors_.front()->jet(x, t);
    for (std::size_t i = 1; i < factors_.size(); ++i) p = taylor_mul(p, factors_[i]->jet(x, t));
    return p;
  }
  int precedence() const override { return 2; }
  void print(std::ostream& os) const override {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) os << '*';
      print_child(os, *factors_[i], 3);
    }
  }
  bool same(const Node& o) const override {
    return same_multiset(
        factors_, static_cast<const ProductNode&>(o).factors_, [](const NodePtr& n) { return n->hash(); },
        [](const NodePtr& a, const NodePtr& b) { return equal(*a, *b); });
  }
  const std::vector<NodePtr>& factors() const { return factors_; }

 private:
  std::vector<NodePtr> factors_;
};

class UnaryNode : public Node {
 public:
  UnaryNode(Kind kind, NodePtr child, std::uint64_t extra)
      : Node(kind, hash_combine(hash_combine(static_cast<std::uint64_t>(kind) + 17, extra), child->hash()),
             child->depends_x(), child->depends_t()),
        child_(std::move(child)) {}
  const NodePtr& child() const { return child_; }

 protected:
  bool same_child(const Node& o) const { return equal(*static_cast<const UnaryNode&>(o).child_, *child_); }
  NodePtr child_;
};

class ReciprocalNode final : public UnaryNode {
 public:
  explicit ReciprocalNode(NodePtr c) : UnaryNode(Kind::Reciprocal, std::move(c), 0) {}
  double value(double x, double t) const override { return 1.0 / checked(child_->value(x, t)); }
  Jet jet(double x, double t) const override {
    Jet c = child_->jet(x, t);
    checked(c[0]);
    return taylor_reciprocal(c);
  }
  void print(std::ostream& os) const override {
    os << "1/";
    print_child(os, *child_, 3);
  }
  int precedence() const override { return 2; }
  bool same(const Node& o) const override { return same_child(o); }

 private:
  static double checked(double v) {
    if (v == 0.0) throw DomainError("division by zero in closed-form evaluation");
    return v;
  }
};

class ExpNode final : public UnaryNode {
 public:
  explicit ExpNode(NodePtr c) : UnaryNode(Kind::Exp, std::move(c), 0) {}
  double value(double x, double t) const override { return checked(std::exp(child_->value(x, t))); }
  Jet jet(double x, double t) const override {
    Jet j = taylor_exp(child_->jet(x, t));
    checked(j[0]);
    return j;
  }
  void print(std::ostream& os) const override {
    os << "exp(";
    child_->print(os);
    os << ')';
  }
  bool same(const Node& o) const override { return same_child(o); }

 private:
  static double checked(double v) {
    if (!std::isfinite(v)) throw BlowUpError("exp overflow in closed-form evaluation");
    return v;
  }
};

class LogNode final : public UnaryNode {
 public:
  explicit LogNode(NodePtr c) : UnaryNode(Kind::Log, std::move(c), 0) {}
  double value(double x, double t) const override { return std::log(checked(child_->value(x, t))); }
  Jet jet(double x, double t) const override {
    Jet c = child_->jet(x, t);
    checked(c[0]);
    return taylor_log(c);
  }
  void print(std::ostream& os) const override {
    os << "log(";
    child_->print(os);
    os << ')';
  }
  bool same(const Node& o) const override { return same_child(o); }

 private:
  static double checked(double v) {
    if (!(v > 0.0)) throw DomainError("log of a non-positive value in closed-form evaluation");
    return v;
  }
};

class ShiftNode final : public UnaryNode {
 public:
  ShiftNode(NodePtr c, int k, double eps)
      : UnaryNode(Kind::Shift, std::move(c), hash_combine(mix(static_cast<std::uint64_t>(k + 1000)), hash_double(eps))),
        k_(k),
        eps_(eps) {}
  double value(double x, double t) const override { return child_->value(mobius_shift<double>(x, k_, eps_), t); }
  Jet jet(double x, double t) const override { return child_->jet(mobius_shift<double>(x, k_, eps_), t); }
  void print(std::ostream& os) const override {
    if (child_->kind() == Kind::Named) {
      os << static_cast<const NamedNode&>(*child_).name() << '(' << shifted_argument(k_) << ')';
    } else {
      os << "[";
      child_->print(os);
      os << "](x -> " << shifted_argument(k_) << ')';
    }
  }
  bool same(const Node& o) const override {
    const auto& s = static_cast<const ShiftNode&>(o);
    return s.k_ == k_ && s.eps_ == eps_ && same_child(o);
  }
  int k() const { return k_; }
  double eps() const { return eps_; }

 private:
  int k_;
  double eps_;
};

class TimeDerivativeNode final : public UnaryNode {
 public:
  explicit TimeDerivativeNode(NodePtr c) : UnaryNode(Kind::TimeDerivative, std::move(c), 0) {}
  double value(double x, double t) const override { return child_->jet(x, t)[1]; }
  Jet jet(double x, double t) const override { return taylor_derivative(child_->jet(x, t)); }
  void print(std::ostream& os) const override {
    os << "d/dt(";
    child_->print(os);
    os << ')';
  }
  bool same(const Node& o) const override { return same_child(o); }
};

class TimeScaleNode final : public UnaryNode {
 public:
  TimeScaleNode(NodePtr c, double scale) : UnaryNode(Kind::TimeScale, std::move(c), hash_double(scale)), scale_(scale) {}
  double value(double x, double t) const override { return child_->value(x, scale_ * t); }
  Jet jet(double x, double t) const override { return taylor_time_scale(child_->jet(x, scale_ * t), scale_); }
  void print(std::ostream& os) const override {
    os << '[';
    child_->print(os);
    os << "](t -> " << format_number(scale_) << "*t)";
  }
  bool same(const Node& o) const override {
    return static_cast<const TimeScaleNode&>(o).scale_ == scale_ && same_child(o);
  }
  double scale() const { return scale_; }

 private:
  double scale_;
};

const ConstantNode* as_constant(const NodePtr& n) {
  return n->kind() == Kind::Constant ? static_cast<const ConstantNode*>(n.get()) : nullptr;
}

NodePtr make_constant(double c) { return std::make_shared<ConstantNode>(c); }

// Accumulates offset + sum w_i * node_i, merging structurally equal nodes.
class LinearBuilder {
 public:
  void add(const NodePtr& n, double w) {
    if (w == 0.0) return;
    if (const auto* c = as_constant(n)) {
      offset_ += w * c->c();
      return;
    }
    if (n->kind() == Kind::Linear) {
      const auto& l = static_cast<const LinearNode&>(*n);
      offset_ += w * l.offset();
      for (const auto& [tw, tn] : l.terms()) add_term(tn, w * tw);
      return;
    }
    add_term(n, w);
  }

  NodePtr build() {
    std::vector<Term> kept;
    for (auto& t : terms_) {
      if (t.first != 0.0) kept.push_back(std::move(t));
    }
    if (kept.empty()) return make_constant(offset_);
    if (offset_ == 0.0 && kept.size() == 1 && kept.front().first == 1.0) return kept.front().second;
    std::uint64_t h = hash_combine(mix(5), hash_double(offset_));
    std::uint64_t acc = 0;
    bool dx = false, dt = false;
    for (const auto& [w, n] : kept) {
      acc += hash_combine(hash_double(w), n->hash());
      dx = dx || n->depends_x();
      dt = dt || n->depends_t();
    }
    return std::make_shared<LinearNode>(offset_, std::move(kept), hash_combine(h, acc), dx, dt);
  }

 private:
  void add_term(const NodePtr& n, double w) {
    for (auto& t : terms_) {
      if (equal(*t.second, *n)) {
        t.first += w;
        return;
      }
    }
    terms_.emplace_back(w, n);
  }

  double offset_ = 0.0;
  std::vector<Term> terms_;
};

NodePtr make_product(const NodePtr& a, const NodePtr& b) {
  double coeff = 1.0;
  std::vector<NodePtr> factors;
  auto absorb = [&](const NodePtr& n) {
    if (const auto* c = as_constant(n)) {
      coeff *= c->c();
      return;
    }
    if (n->kind() == Kind::Product) {
      for (const auto& f : static_cast<const ProductNode&>(*n).factors()) factors.push_back(f);
      return;
    }
    if (n->kind() == Kind::Linear) {
      const auto& l = static_cast<const LinearNode&>(*n);
      if (l.offset() == 0.0 && l.terms().size() == 1) {
        coeff *= l.terms().front().first;
        const NodePtr& inner = l.terms().front().second;
        if (inner->kind() == Kind::Product) {
          for (const auto& f : static_cast<const ProductNode&>(*inner).factors()) factors.push_back(f);
        } else {
          factors.push_back(inner);
        }
        return;
      }
    }
    factors.push_back(n);
  };
  absorb(a);
  absorb(b);
  if (coeff == 0.0) return make_constant(0.0);
  if (factors.empty()) return make_constant(coeff);
  NodePtr core;
  if (factors.size() == 1) {
    core = factors.front();
  } else {
    std::uint64_t acc = 0;
    bool dx = false, dt = false;
    for (const auto& f : factors) {
      acc += mix(f->hash());
      dx = dx || f->depends_x();
      dt = dt || f->depends_t();
    }
    core = std::make_shared<ProductNode>(std::move(factors), hash_combine(mix(6), acc), dx, dt);
  }
  if (coeff == 1.0) return core;
  LinearBuilder lb;
  lb.add(core, coeff);
  return lb.build();
}

}  // namespace
}  // namespace detail

using detail::Kind;
using detail::NodePtr;

Function::Function() : Function(0.0) {}
Function::Function(double c) : node_(detail::make_constant(c)) {}
Function::Function(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}

double Function::operator()(double x, double t) const { return node_->value(x, t); }
Jet Function::jet(double x, double t) const { return node_->jet(x, t); }

std::optional<double> Function::constant_value() const {
  if (const auto* c = detail::as_constant(node_)) return c->c();
  return std::nullopt;
}

bool Function::is_zero() const {
  auto c = constant_value();
  return c && *c == 0.0;
}

bool Function::depends_on_x() const { return node_->depends_x(); }
bool Function::depends_on_t() const { return node_->depends_t(); }
std::size_t Function::structural_hash() const { return static_cast<std::size_t>(node_->hash()); }

std::string Function::to_string() const {
  std::ostringstream os;
  node_->print(os);
  return os.str();
}

bool structurally_equal(const Function& a, const Function& b) { return detail::equal(*a.node_, *b.node_); }

Function var_x() {
  static const NodePtr x = std::make_shared<detail::XNode>();
  return Function(x);
}

Function var_t() {
  static const NodePtr t = std::make_shared<detail::TNode>();
  return Function(t);
}

Function named(std::string name, Function body) {
  return Function(std::make_shared<detail::NamedNode>(std::move(name), body.node()));
}

Function operator+(const Function& a, const Function& b) {
  detail::LinearBuilder lb;
  lb.add(a.node(), 1.0);
  lb.add(b.node(), 1.0);
  return Function(lb.build());
}

Function operator-(const Function& a, const Function& b) {
  detail::LinearBuilder lb;
  lb.add(a.node(), 1.0);
  lb.add(b.node(), -1.0);
  return Function(lb.build());
}

Function operator-(const Function& a) {
  detail::LinearBuilder lb;
  lb.add(a.node(), -1.0);
  return Function(lb.build());
}

Function operator*(const Function& a, const Function& b) { return Function(detail::make_product(a.node(), b.node())); }

Function operator/(const Function& a, const Function& b) { return a * reciprocal(b); }

Function reciprocal(const Function& f) {
  if (auto c = f.constant_value()) {
    if (*c == 0.0) throw DomainError("reciprocal of the zero constant");
    return Function(1.0 / *c);
  }
  if (f.node()->kind() == Kind::Reciprocal) {
    return Function(static_cast<const detail::ReciprocalNode&>(*f.node()).child());
  }
  return Function(std::make_shared<detail::ReciprocalNode>(f.node()));
}

Function exp(const Function& f) {
  if (auto c = f.constant_value()) return Function(std::exp(*c));
  return Function(std::make_shared<detail::ExpNode>(f.node()));
}

Function log(const Function& f) {
  if (auto c = f.constant_value()) {
    if (!(*c > 0.0)) throw DomainError("log of a non-positive constant");
    return Function(std::log(*c));
  }
  if (f.node()->kind() == Kind::Exp) {
    return Function(static_cast<const detail::ExpNode&>(*f.node()).child());
  }
  return Function(std::make_shared<detail::LogNode>(f.node()));
}

Function shift_apply(const Function& f, int k, const ShiftParams& p) {
  if (k == 0 || !f.depends_on_x()) return f;
  NodePtr child = f.node();
  if (child->kind() == Kind::Shift) {
    const auto& s = static_cast<const detail::ShiftNode&>(*child);
    if (s.eps() == p.epsilon()) {
      k += s.k();
      child = s.child();
      if (k == 0) return Function(child);
    }
  }
  return Function(std::make_shared<detail::ShiftNode>(child, k, p.epsilon()));
}

Function central_difference(const Function& f, const ShiftParams& p) {
  return shift_apply(f, 1, p) + shift_apply(f, -1, p) - 2.0 * f;
}

Function time_derivative(const Function& f) {
  if (!f.depends_on_t()) return Function(0.0);
  return Function(std::make_shared<detail::TimeDerivativeNode>(f.node()));
}

Function time_scale(const Function& f, double c) {
  if (c == 1.0 || !f.depends_on_t()) return f;
  if (f.node()->kind() == Kind::TimeScale) {
    const auto& s = static_cast<const detail::TimeScaleNode&>(*f.node());
    return time_scale(Function(s.child()), s.scale() * c);
  }
  return Function(std::make_shared<detail::TimeScaleNode>(f.node(), c));
}

}  // namespace gqtoda
