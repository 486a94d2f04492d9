#include "cycdt/signature.hpp"

namespace cyc {

bool Signature::has_type(const TypeName& t) const { return is_datatype(t) || is_primitive(t); }

const DatatypeDecl& Signature::datatype(const TypeName& t) const {
  auto it = types_.find(t);
  if (it == types_.end()) throw Error("unknown datatype " + t);
  return it->second;
}

const DatatypeDecl* Signature::find_datatype(const TypeName& t) const {
  auto it = types_.find(t);
  return it == types_.end() ? nullptr : &it->second;
}

std::vector<TypeName> Signature::base_types() const {
  std::vector<TypeName> r = primitives_order_;
  r.insert(r.end(), order_.begin(), order_.end());
  return r;
}

void Signature::add_primitive(const TypeName& t) {
  if (primitives_.count(t)) return;
  if (types_.count(t)) throw Error("type " + t + " is already a datatype");
  primitives_[t] = true;
  primitives_order_.push_back(t);
}

DatatypeDecl& Signature::add_datatype(const TypeName& t) {
  if (has_type(t)) throw Error("duplicate type " + t);
  order_.push_back(t);
  auto& d = types_[t];
  d.name = t;
  return d;
}

const Symbol* Signature::add_ctor(const TypeName& type, const std::string& name, TypeSeq args,
                                  bool infix) {
  auto it = types_.find(type);
  if (it == types_.end()) throw Error("unknown datatype " + type);
  for (auto* c : it->second.ctors)
    if (c->name == name) throw Error("duplicate constructor " + name + " in " + type);
  Symbol s;
  s.kind = SymKind::Ctor;
  s.name = name;
  s.args = std::move(args);
  s.result = type;
  s.infix = infix;
  symbols_.push_back(std::move(s));
  const Symbol* p = &symbols_.back();
  it->second.ctors.push_back(p);
  return p;
}

void Signature::set_axbr(const TypeName& type, const std::string& unit, const std::string& branch) {
  auto it = types_.find(type);
  if (it == types_.end()) throw Error("unknown datatype " + type);
  Symbol* u = nullptr;
  Symbol* b = nullptr;
  for (auto& s : symbols_) {
    if (s.kind != SymKind::Ctor || s.result != type) continue;
    if (s.name == unit) u = &s;
    if (s.name == branch) b = &s;
  }
  if (!u) throw Error("AxBr unit " + unit + " is not a constructor of " + type);
  if (!b) throw Error("AxBr branch " + branch + " is not a constructor of " + type);
  if (!u->args.empty()) throw Error("AxBr unit " + unit + " must be nullary");
  if (b->args != TypeSeq{type, type})
    throw Error("AxBr branch " + branch + " must have arity " + type + "," + type + " -> " + type);
  u->role = BrRole::Unit;
  b->role = BrRole::Branch;
  it->second.br_unit = u;
  it->second.br_branch = b;
}

std::vector<const Symbol*> Signature::ctors_named(const std::string& name) const {
  std::vector<const Symbol*> r;
  for (auto& t : order_)
    for (auto* c : types_.at(t).ctors)
      if (c->name == name) r.push_back(c);
  return r;
}

const Symbol* Signature::ctor(const TypeName& type, const std::string& name) const {
  auto* d = find_datatype(type);
  if (!d) return nullptr;
  for (auto* c : d->ctors)
    if (c->name == name) return c;
  return nullptr;
}

const Symbol* Signature::fold(const TypeName& source, const TypeSeq& target) {
  if (auto* f = find_fold(source, target)) return f;
  const auto& d = datatype(source);
  for (auto& b : target)
    if (!has_type(b)) throw Error("unknown type " + b);
  Symbol s;
  s.kind = SymKind::Fold;
  s.name = "fold_" + source;
  for (auto& b : target) s.name += "_" + b;
  if (target.empty()) s.name += "_";
  s.source = source;
  s.target = target;
  s.cases = d.ctors;
  symbols_.push_back(std::move(s));
  const Symbol* p = &symbols_.back();
  folds_[{source, target}] = p;
  return p;
}

const Symbol* Signature::find_fold(const TypeName& source, const TypeSeq& target) const {
  auto it = folds_.find({source, target});
  return it == folds_.end() ? nullptr : it->second;
}

std::vector<const Symbol*> Signature::folds() const {
  std::vector<const Symbol*> r;
  for (auto& [k, v] : folds_) r.push_back(v);
  return r;
}

int Signature::recursive_args(const Symbol* ctor) {
  int n = 0;
  for (auto& a : ctor->args)
    if (a == ctor->result) ++n;
  return n;
}

TypeSeq Signature::case_binders(const Symbol* ctor, const TypeSeq& target) {
  TypeSeq r;
  for (auto& a : ctor->args)
    if (a != ctor->result) r.push_back(a);
  for (auto& a : ctor->args)
    if (a == ctor->result) r.insert(r.end(), target.begin(), target.end());
  return r;
}

}  // namespace cyc
