#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cycdt/signature.hpp"
#include "cycdt/term.hpp"
#include "cycdt/typing.hpp"

namespace cyc {

struct RewriteRule {
  std::string name;      // "1r" ... "16r", or a fixture name
  std::string system;    // "FOLDr", "SIMP" or "fixture"
  std::string instance;  // which symbol / type instantiation
  MetaContext meta;
  Term lhs, rhs;
  std::string guard;  // side condition, already enforced by the pattern
};

// Miller pattern matching: returns theta with subst_meta(lhs, theta) == t.
std::optional<MetaAssignment> match(const Term& lhs, const Term& t);

enum class Family { R1, R2, R3, R4, R5, R7, R10, R11, R12, R13, R14, R15, R16 };
const char* family_name(Family f);

// Parameters selecting one concrete instance of a family.
struct RuleKey {
  Family family;
  const Symbol* fold = nullptr;  // fold families
  const Symbol* ctor = nullptr;  // (5r)
  int k = 0;                     // fold parameters
  int i = 0;                     // (1r) projected index, (4r) cy width
  std::vector<int> widths;       // (3r), (10r) tuple component widths
  TypeSeq types;                 // binder types of cy / @, or the AxBr type
  TypeSeq result;                // (7r) body type
  std::string str() const;
};

class RuleSet {
 public:
  RuleSet(std::shared_ptr<Signature> sig, std::vector<Family> families);
  static RuleSet foldr(std::shared_ptr<Signature> sig);
  static RuleSet simp(std::shared_ptr<Signature> sig);
  static RuleSet foldr_simp(std::shared_ptr<Signature> sig);

  const std::vector<Family>& families() const { return families_; }
  const Signature& signature() const { return *sig_; }
  std::shared_ptr<Signature> signature_ptr() const { return sig_; }

  // Key of the instance of `f` that could fire at the root of t.
  std::optional<RuleKey> key_for(Family f, const Term& t) const;
  RewriteRule build(const RuleKey& k) const;
  const RewriteRule& instance(const RuleKey& k) const;

  // First rule (in family order) whose instance matches at the root.
  struct Fired {
    const RewriteRule* rule;
    Term result;
  };
  std::optional<Fired> apply_root(const Term& t) const;
  // All rules matching at the root, in family order.
  std::vector<Fired> all_root(const Term& t) const;

  // Instances with every width/arity parameter up to `bound`, over the
  // signature's current fold symbols and datatypes.
  std::vector<RewriteRule> enumerate(int bound) const;

 private:
  std::shared_ptr<Signature> sig_;
  std::vector<Family> families_;
  mutable std::mutex mu_;
  mutable std::map<std::string, std::unique_ptr<RewriteRule>> cache_;
};

}  // namespace cyc
