#include "cycdt/print.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace cyc {

bool is_operator_name(const std::string& name) {
  if (name.empty()) return false;
  for (char c : name)
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '"' || c == '(' ||
        c == ')' || c == ',' || c == '<' || c == '>' || c == '[' || c == ']' || c == '.' ||
        c == '@' || c == '?' || c == '\'' || c == '-')
      return false;
  return true;
}

int infix_precedence(const std::string& op) {
  if (op == "::") return 5;
  if (op == "&&" || op == "/\\" || op == "*") return 4;
  return 3;
}

bool infix_right_assoc(const std::string& op) { return op == "::"; }

namespace {

class Printer {
 public:
  explicit Printer(const PrintOptions& o) : opts_(o) {}

  void collect_free(const Term& t) {
    for (auto& n : free_vars(t)) used_.insert(n);
  }

  void go(const Term& t, int prec) {
    switch (t->tag) {
      case Tag::FVar:
        out_ << t->name;
        return;
      case Tag::BVar: {
        auto idx = scopes_.size() - 1 - static_cast<std::size_t>(t->depth);
        if (t->depth < 0 || idx >= scopes_.size() ||
            static_cast<std::size_t>(t->slot) >= scopes_[idx].size()) {
          out_ << "#" << t->depth << "." << t->slot;
          return;
        }
        out_ << scopes_[idx][t->slot];
        return;
      }
      case Tag::Lit:
        out_ << '"';
        for (char c : t->name) {
          if (c == '"' || c == '\\') out_ << '\\';
          out_ << c;
        }
        out_ << '"';
        return;
      case Tag::Meta:
        out_ << t->name;
        out_ << "[";
        list(t->args);
        out_ << "]";
        return;
      case Tag::Abs:
        binder_abs(t, ", ");
        return;
      case Tag::App:
        app(t, prec);
        return;
    }
  }

  std::string str() const { return out_.str(); }

 private:
  void list(const std::vector<Term>& xs, std::size_t from = 0, std::size_t to = std::string::npos) {
    if (to == std::string::npos) to = xs.size();
    for (std::size_t i = from; i < to; ++i) {
      if (i > from) out_ << ", ";
      go(xs[i], 0);
    }
  }

  std::string pick(const std::string& hint) {
    std::string base = hint;
    auto p = base.find('%');
    if (p != std::string::npos) base = base.substr(0, p);
    if (base.empty() || !(std::isalpha(static_cast<unsigned char>(base[0])) || base[0] == '_'))
      base = "x";
    std::string n = base;
    for (int i = 1; used_.count(n); ++i) n = base + std::to_string(i);
    return n;
  }

  // sep is ", " for grouped binders, "." for dot chains
  void binder_abs(const Term& t, const char* sep) {
    std::vector<std::string> names;
    for (auto& b : t->binders) names.push_back(pick(b.hint)), used_.insert(names.back());
    bool chain = std::string(sep) == ".";
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (i) out_ << (chain ? " " : sep);
      out_ << names[i];
      if (opts_.binder_types && !t->binders[i].type.empty()) out_ << " : " << t->binders[i].type;
      if (chain) out_ << ".";
    }
    if (!chain) out_ << ".";
    out_ << " ";
    scopes_.push_back(names);
    go(t->body(), 0);
    scopes_.pop_back();
    for (auto& n : names) used_.erase(used_.find(n));
  }

  void arg(const Term& a, bool dot_binders) {
    if (a->tag == Tag::Abs)
      binder_abs(a, dot_binders ? "." : ", ");
    else
      go(a, 0);
  }

  void app(const Term& t, int prec) {
    const Symbol* s = t->sym;
    switch (s->kind) {
      case SymKind::Unit:
        out_ << "<>";
        return;
      case SymKind::Tuple:
        out_ << "<";
        list(t->args);
        out_ << ">";
        return;
      case SymKind::Cy:
        out_ << "cy(";
        arg(t->args[0], false);
        out_ << ")";
        return;
      case SymKind::Comp: {
        bool paren = prec > 1;
        if (paren) out_ << "(";
        if (t->args[0]->tag == Tag::Abs) {
          out_ << "(";
          binder_abs(t->args[0], ", ");
          out_ << ")";
        } else {
          go(t->args[0], 10);
        }
        out_ << " @ ";
        go(t->args[1], 2);
        if (paren) out_ << ")";
        return;
      }
      case SymKind::Fold: {
        std::size_t m = s->cases.size();
        out_ << "fold (";
        for (std::size_t i = 0; i < m; ++i) {
          if (i) out_ << ", ";
          arg(t->args[i], true);
        }
        out_ << ") ";
        const Term& st = t->args[m];
        if (st->tag == Tag::Abs) {
          out_ << "(";
          binder_abs(st, ", ");
          out_ << " ;";
          for (std::size_t i = m + 1; i < t->args.size(); ++i) {
            out_ << (i > m + 1 ? ", " : " ");
            go(t->args[i], 0);
          }
          out_ << ")";
        } else {
          go(st, 10);
        }
        return;
      }
      case SymKind::Ctor:
        break;
    }
    if (s->infix && t->args.size() == 2) {
      int p = infix_precedence(s->name);
      bool right = infix_right_assoc(s->name);
      bool paren = prec > p;
      if (paren) out_ << "(";
      go(t->args[0], right ? p + 1 : p);
      out_ << " " << s->name << " ";
      go(t->args[1], right ? p : p + 1);
      if (paren) out_ << ")";
      return;
    }
    if (s->infix) out_ << "(" << s->name << ")";
    else out_ << s->name;
    if (t->args.empty()) return;
    out_ << "(";
    list(t->args);
    out_ << ")";
  }

  const PrintOptions& opts_;
  std::ostringstream out_;
  std::vector<std::vector<std::string>> scopes_;
  std::multiset<std::string> used_;
};

}  // namespace

std::string print(const Term& t, const PrintOptions& opts) {
  Printer p(opts);
  p.collect_free(t);
  p.go(t, 0);
  return p.str();
}

}  // namespace cyc
