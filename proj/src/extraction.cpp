#include "cdi/extraction.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

// keep the TU light; the live adapter only needs the client side
#define CPPHTTPLIB_NO_EXCEPTIONS
#include <httplib.h>

namespace cdi {

const std::vector<FewShot>& default_few_shots() {
  // reconstructions of the four-example regime; the originals are not
  // published
  static const std::vector<FewShot> shots = {
      {"If deterministic is used, then trend must be \"n\" and seasonal "
       "must be False.",
       "(deterministic != None) -> ((trend = \"n\") ^ (seasonal = False))"},
      {"Gram must not be None when X is None.",
       "(X = None) -> (Gram != None)"},
      {"Ignored for affinity=\"nearest_neighbors\".",
       "(affinity = \"nearest_neighbors\") -> (ignore(gamma))"},
      {"alpha must be specified when fit_intercept is False.",
       "(fit_intercept = False) -> (specified(alpha))"},
  };
  return shots;
}

std::string prompt_hash(std::string_view text) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

size_t word_count(std::string_view text) {
  size_t n = 0;
  bool in_word = false;
  for (char c : text) {
    bool ws = c == ' ' || c == '\t' || c == '\n' || c == '\r';
    if (!ws && !in_word) ++n;
    in_word = !ws;
  }
  return n;
}

std::string_view trim_view(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

}  // namespace

std::vector<std::string> chunk_document(std::string_view doc,
                                        size_t max_words) {
  if (max_words == 0) max_words = 1;
  // split on blank lines
  std::vector<std::string> paragraphs;
  size_t start = 0;
  while (start < doc.size()) {
    size_t brk = doc.find("\n\n", start);
    std::string_view para = brk == std::string_view::npos
                                ? doc.substr(start)
                                : doc.substr(start, brk - start);
    para = trim_view(para);
    if (!para.empty()) paragraphs.emplace_back(para);
    if (brk == std::string_view::npos) break;
    start = brk + 2;
  }

  // a single paragraph can exceed the budget; split it on word boundaries
  std::vector<std::string> pieces;
  for (const auto& p : paragraphs) {
    if (word_count(p) <= max_words) {
      pieces.push_back(p);
      continue;
    }
    std::istringstream is(p);
    std::string word, acc;
    size_t n = 0;
    while (is >> word) {
      if (n == max_words) {
        pieces.push_back(acc);
        acc.clear();
        n = 0;
      }
      if (!acc.empty()) acc += " ";
      acc += word;
      ++n;
    }
    if (!acc.empty()) pieces.push_back(acc);
  }

  std::vector<std::string> chunks;
  std::string acc;
  size_t n = 0;
  for (const auto& p : pieces) {
    size_t w = word_count(p);
    if (!acc.empty() && n + w > max_words) {
      chunks.push_back(acc);
      acc.clear();
      n = 0;
    }
    if (!acc.empty()) acc += "\n\n";
    acc += p;
    n += w;
  }
  if (!acc.empty()) chunks.push_back(acc);
  return chunks;
}

std::string build_extraction_prompt(const ExtractionRequest& req,
                                    size_t chunk_index) {
  if (chunk_index >= req.doc_chunks.size())
    throw std::out_of_range("chunk index out of range");
  std::ostringstream os;
  os << "You extract parameter constraints from API documentation and state "
        "them as logical expressions.\n"
     << "Symbols: `a -> b` means a implies b; `! a` means logical NOT; "
        "`a ^ b` means logical AND; `a v b` means logical OR; parentheses "
        "group subexpressions. Atoms compare a parameter against a value "
        "with <, >, <=, >=, = or !=.\n"
     << "\n"
     << "When the documentation uses vague usage words instead of concrete "
        "values, these keywords should be retained in the final logical "
        "expression: ignore, override, unused, no effect (write ignore(x)); "
        "specify, exist, significant, have an effect (write specified(x)).\n"
     << "\n"
     << "Examples:\n";
  for (const auto& shot : req.few_shots)
    os << "Sentence: " << shot.sentence << "\n"
       << "Constraint: " << shot.constraint_text << "\n";
  os << "\nParameters:";
  for (const auto& p : req.param_names) os << " " << p;
  os << "\n\nDocumentation:\n" << req.doc_chunks[chunk_index] << "\n\n"
     << "Answer with one constraint per line, nothing else.\n";
  return os.str();
}

ExtractionResult parse_llm_output(std::string_view completion) {
  ExtractionResult result;
  size_t start = 0;
  while (start <= completion.size()) {
    size_t nl = completion.find('\n', start);
    std::string_view raw = nl == std::string_view::npos
                               ? completion.substr(start)
                               : completion.substr(start, nl - start);
    start = nl == std::string_view::npos ? completion.size() + 1 : nl + 1;
    std::string_view line = trim_view(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.rfind("Constraint:", 0) == 0)
      line = trim_view(line.substr(11));

    // optional `expr ;; source ;; confidence`
    std::string expr, source, confidence;
    size_t s1 = line.find(" ;; ");
    if (s1 == std::string_view::npos) {
      expr = std::string(line);
    } else {
      expr = std::string(trim_view(line.substr(0, s1)));
      std::string_view rest = line.substr(s1 + 4);
      size_t s2 = rest.find(" ;; ");
      if (s2 == std::string_view::npos) {
        source = std::string(trim_view(rest));
      } else {
        source = std::string(trim_view(rest.substr(0, s2)));
        confidence = std::string(trim_view(rest.substr(s2 + 4)));
      }
    }
    try {
      ConstraintPtr c = parse_constraint(expr);
      result.constraints.push_back({std::move(c), source, confidence});
    } catch (const ParseError& e) {
      result.rejects.push_back(
          {std::string(line),
           std::string(e.what()) + " at offset " + std::to_string(e.offset)});
    }
  }
  return result;
}

ExtractionResult extract_constraints(const DocUnit& unit, LlmClient& client) {
  std::ostringstream doc;
  std::vector<std::string> params;
  for (const auto& p : unit.params) {
    params.push_back(p.name);
    doc << p.name;
    if (!p.type_text.empty()) doc << " : " << p.type_text;
    doc << "\n";
    if (!p.description.empty()) doc << "    " << p.description << "\n";
    doc << "\n";
  }

  // fit the prompt into the client's window
  size_t max_words = 1500;
  {
    ExtractionRequest probe;
    probe.doc_chunks = {""};
    probe.param_names = params;
    size_t overhead = word_count(build_extraction_prompt(probe, 0));
    size_t budget_words =
        static_cast<size_t>(static_cast<double>(client.max_tokens()) * 0.75);
    if (budget_words > overhead + 16)
      max_words = std::min<size_t>(1500, budget_words - overhead);
    else
      max_words = 16;
  }

  ExtractionRequest req;
  req.doc_chunks = chunk_document(doc.str(), max_words);
  req.param_names = params;

  ExtractionResult merged;
  for (size_t i = 0; i < req.doc_chunks.size(); ++i) {
    std::string completion;
    try {
      completion = client.send(build_extraction_prompt(req, i));
    } catch (ClientError& e) {
      e.partial = std::move(merged);
      throw;
    }
    ExtractionResult part = parse_llm_output(completion);
    for (auto& a : part.constraints) merged.constraints.push_back(std::move(a));
    for (auto& r : part.rejects) merged.rejects.push_back(std::move(r));
  }

  // reject constraints that name unknown parameters
  std::set<std::string> known(params.begin(), params.end());
  ExtractionResult out;
  out.rejects = std::move(merged.rejects);
  for (auto& a : merged.constraints) {
    std::string unknown;
    for (const auto& p : constraint_params(a.constraint)) {
      if (!known.count(p) && p.rfind("call_", 0) != 0) {
        unknown = p;
        break;
      }
    }
    if (!unknown.empty()) {
      out.rejects.push_back({print_constraint(a.constraint),
                             "UnknownParameter: " + unknown});
      continue;
    }
    bool dup = false;
    for (const auto& b : out.constraints)
      dup = dup || structurally_equal(a.constraint, b.constraint);
    if (!dup) out.constraints.push_back(std::move(a));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Clients

ReplayClient::ReplayClient(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ClientError("cannot open replay file " + path.string(), 0);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("prompt_hash") ||
        !j.contains("completion"))
      throw ClientError("malformed replay record at line " +
                            std::to_string(line_no),
                        0);
    completions_[j["prompt_hash"].get<std::string>()] =
        j["completion"].get<std::string>();
  }
}

std::string ReplayClient::send(const std::string& prompt) {
  auto it = completions_.find(prompt_hash(prompt));
  if (it == completions_.end())
    throw ClientError("no recorded completion for prompt " +
                          prompt_hash(prompt),
                      404);
  return it->second;
}

std::string RecordingClient::send(const std::string& prompt) {
  std::string completion = inner_.send(prompt);
  nlohmann::ordered_json j;
  j["prompt_hash"] = prompt_hash(prompt);
  j["prompt"] = prompt;
  j["completion"] = completion;
  std::ofstream out(path_, std::ios::app);
  if (!out) throw ClientError("cannot append to " + path_.string(), 0);
  out << j.dump() << "\n";
  return completion;
}

std::string HttpClient::send(const std::string& prompt) {
  const char* key = std::getenv("CDI_LLM_API_KEY");
  if (!key || !*key)
    throw ClientError("CDI_LLM_API_KEY is not set", 401);

  nlohmann::json body;
  body["model"] = model_;
  body["messages"] = nlohmann::json::array(
      {{{"role", "user"}, {"content", prompt}}});

  httplib::Client cli(base_url_);
  cli.set_connection_timeout(30);
  cli.set_read_timeout(120);
  httplib::Headers headers = {
      {"Authorization", std::string("Bearer ") + key}};
  auto res = cli.Post("/v1/chat/completions", headers, body.dump(),
                      "application/json");
  if (!res) throw ClientError("transport failure", 0);
  if (res->status == 429) {
    double retry = 1.0;
    if (res->has_header("Retry-After"))
      retry = std::atof(res->get_header_value("Retry-After").c_str());
    throw ClientError("rate limited", res->status, retry);
  }
  if (res->status != 200)
    throw ClientError("http status " + std::to_string(res->status),
                      res->status);
  nlohmann::json j = nlohmann::json::parse(res->body, nullptr, false);
  if (j.is_discarded() || !j.contains("choices") || j["choices"].empty())
    throw ClientError("malformed completion body", res->status);
  return j["choices"][0]["message"]["content"].get<std::string>();
}

}  // namespace cdi
