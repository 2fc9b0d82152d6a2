#include "bstlab/tree_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bstlab {

namespace {

void format_rec(const SearchTree& t, int id, std::string& out) {
  if (id == SearchTree::kNil) {
    out += '.';
    return;
  }
  out += '(';
  out += t.key(id).to_string();
  out += ' ';
  format_rec(t, t.node(id).left, out);
  out += ' ';
  format_rec(t, t.node(id).right, out);
  out += ')';
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  SearchTree run() {
    SearchTree tree;
    skip_ws();
    const int root = subtree(tree);
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    tree.set_root(root);
    std::string why;
    if (!tree.empty() && !tree.is_valid(&why)) fail("not a search tree: " + why);
    return tree;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("tree parse error at offset " + std::to_string(pos_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  int subtree(SearchTree& tree) {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] == '.') {
      ++pos_;
      return SearchTree::kNil;
    }
    if (text_[pos_] != '(') fail("expected '(' or '.'");
    ++pos_;
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')') {
      ++pos_;
    }
    auto key = Key::parse(text_.substr(start, pos_ - start));
    if (!key) fail("bad key '" + std::string(text_.substr(start, pos_ - start)) + "'");
    int id = 0;
    try {
      id = tree.add_node(*key);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
    const int left = subtree(tree);
    const int right = subtree(tree);
    tree.attach_left(id, left);
    tree.attach_right(id, right);
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
    ++pos_;
    return id;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string format_tree(const SearchTree& tree) {
  std::string out;
  format_rec(tree, tree.root(), out);
  return out;
}

SearchTree parse_tree(std::string_view text) { return Parser(text).run(); }

SearchTree read_tree_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open tree file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_tree(ss.str());
}

void write_tree_file(const std::string& path, const SearchTree& tree) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write tree file " + path);
  out << format_tree(tree) << '\n';
}

}  // namespace bstlab
