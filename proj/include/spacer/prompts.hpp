#pragma once

#include <map>
#include <string>
#include <string_view>

#include "spacer/error.hpp"

// Prompt templates. Placeholders use {{name}} and are filled by render().
// Revealing, Scaffolding, Assessment and judge texts follow the published
// prompts; the input/output sections appended to the revealing and scaffolding
// prompts, and the refinement/augmentation prompts, are this project's own.
namespace spacer::prompts {

struct Template {
  std::string_view system;
  std::string_view user;
};

/// Replaces every {{name}} with vars[name]. Unknown placeholders are an error.
inline std::string render(std::string_view text, const std::map<std::string, std::string>& vars) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto open = text.find("{{", pos);
    if (open == std::string_view::npos) {
      out.append(text.substr(pos));
      break;
    }
    const auto close = text.find("}}", open + 2);
    if (close == std::string_view::npos) throw Error(ErrorCode::InvalidArgument, "unterminated placeholder");
    out.append(text.substr(pos, open - pos));
    const std::string name(text.substr(open + 2, close - open - 2));
    auto it = vars.find(name);
    if (it == vars.end()) throw Error(ErrorCode::InvalidArgument, "no value for placeholder {{" + name + "}}");
    out.append(it->second);
    pos = close + 2;
  }
  return out;
}

// --- Revealing ---------------------------------------------------------------

inline constexpr Template kRefine{
    R"(Role:
You are a scientific curator who vets keyword sets before they are used to formulate research ideas.)",
    R"(Task:
Review the keyword set below. Replace keywords that are inadequate (ambiguous, overly generic, or malformed) with precise scientific terms, and drop keywords that are unnecessary. Keep the set close to its original size.

Keywords:
{{keywords}}

Output (JSON):
["keyword", ...])"};

inline constexpr Template kWeaver{
    R"(Role:
You are a domain expert tasked with generating a novel research hypothesis from a compact set of biologically and technically relevant keywords.)",
    R"(Goal:
You must identify a coherent subset of these terms, discard incompatible ones, and formulate a single logically unified research concept.

Instructions:
Each keyword denotes an experimental tool, biological entity, or conceptual mechanism.
Avoid speculating about results or impacts.

Steps:
- Define each term's technical role.
- Identify logical constraints and compatibilities.
- Construct a conceptual framework.
- Write a self-contained paragraph describing the research idea.

Keywords:
{{keywords}})"};

inline constexpr Template kSketcher{
    R"(Role:
You are a domain specialist who distills visionary yet precise scientific objectives from a concise list of technical keywords.)",
    R"(Goal:
Craft a sentence that states an ambitious scientific breakthrough attainable within 15-30 years.

Instructions:
- Derive the idea by uncovering conceptual links among the provided terms.
- The objective must be transformative, measurable, and scientifically plausible.
- Do not repeat the original keywords; translate their concepts.

Keywords:
{{keywords}})"};

inline constexpr Template kCombiner{
    R"(Role:
You are a scientific strategist who converts broad research ambitions into tightly scoped, methodologically sound study proposals.)",
    R"(Goal:
Identify one precise sub-problem that advances the ultimate objective and craft a single, rigorously grounded research idea.

Instructions:
- Choose a sub-problem directly linked to the goal.
- Offer one novel mechanistic insight or framework rooted in established science.
- Express the idea in ~100 academic words, as one paragraph.
- Exclude detailed protocols, speculative mechanisms, or exaggerated claims.

Research concept:
{{concept}}

Ultimate objective:
{{goal}})"};

// --- Scaffolding ---------------------------------------------------------------

inline constexpr Template kAugmentation{
    R"(Role:
You are a critical reviewer who challenges research theses with evidence-based counterarguments.)",
    R"(Task:
Challenge the thesis below with counterarguments grounded in the listed peer-reviewed literature, then rewrite the thesis so that it accounts for every valid counterargument while preserving its original approach.

Thesis:
{{thesis}}

Literature:
{{literature}}

Output:
The augmented thesis paragraph only.)"};

inline constexpr Template kGraphGeneration{
    R"(Role:
You are a logic analyst tasked with converting a research idea into a structured reasoning graph.)",
    R"(Task:
Verify whether the provided rationales logically support the main research concept, identify any missing links, and generate necessary intermediate conclusions.

Steps:
- Use all provided rationales exactly as given.
- Form intermediate nodes that bridge groups of rationales toward the main concept.
- Organize the graph as a tree: rationale -> intermediate -> main concept.

Research idea:
{{thesis}}

Previous graph:
{{previous_graph}}

Feedback:
{{feedback}}

Output (JSON):
{
  "vertices": [{"id": "...", "kind": "rationale|intermediate|concept", "text": "...", "supporting_dois": []}, ...],
  "edges": [["from_id", "to_id"], ...]
})"};

inline constexpr Template kRationaleValidation{
    R"(Role:
You are a scientific evaluator responsible for verifying the scientific correctness of a specific proposition.)",
    R"(Task:
Assess whether the claim aligns with established scientific understanding by searching for evidence from peer-reviewed literature using the article search tool.

Procedure:
- Use the article search tool with precision using the exact terms from the proposition.
- Classify each source's relevance to the proposition.
- Return a JSON object that contains:
  - the proposition text
  - your final evaluation status
  - the list of DOIs that support your assessment

Proposition:
{{proposition}}

Article search results:
{{search_results}}

Output (JSON):
{"proposition": "...", "status": "supported|unsupported|inconclusive", "dois": ["..."]})"};

// --- Assessment ----------------------------------------------------------------

inline constexpr Template kReviewer{
    R"(Role:
You are a multidisciplinary scientist who gives balanced, constructive critiques of research proposals.)",
    R"(Task:
Critically evaluate the proposal and provide a two-part review of validity and irrationality.

Steps:
- Read the proposal's `concept' and `rationale' exactly as given.
- Comprehensively evaluate the proposal from a scientific perspective.
- Write a 3-4 sentence overall summary.
- List well-supported points under validity.
- List inconsistent or unreasonable points under irrationality.
- Skip trivial editing remarks.

Input: {{statement}}

Output (JSON):
{
  "summary": "...",
  "validity": ["...", ...],
  "irrationality": ["...", ...]
})"};

inline constexpr Template kMetaReviewer{
    R"(Role:
You are a meta-reviewer who rates the seriousness of each irrationality flagged by reviewers.)",
    R"(Task:
Score every irrationality on severity and explain your decision.

Steps:
- Focus only on methodological flaws, feasibility issues, and scientific impossibilities.
- Choose one option per irrationality:
  A Fatal  B Serious  C Moderate  D Minor  E Negligible.
- Give 1-2 sentences of rationale for each score.

Input:
Research Idea:
{{statement}}

Irrationality:
{{irrationality}}

Output (JSON):
{
  "meta_review": [
    { "option": "A|B|C|D|E", "rationale": "..." },
    ...
  ]
})"};

// --- Reconstruction judge (system prompt intentionally empty) -------------------

inline constexpr std::string_view kJudgeLogic = R"(## Task
Identify whether the provided ideas share the same logical structure or not.

## Elements to Consider
If the ideas share the logical structure, they may be conducted in the same way.

## Instructions
1. Read the two provided ideas carefully.
2. Only return "yes" or "no" without any additional text or explanation.

## First Idea
{{first_idea}}

## Second Idea
{{second_idea}})";

inline constexpr std::string_view kJudgeTopic = R"(## Task
Identify whether the provided ideas share the same topic or not.

## Elements to Consider
If the ideas share the same subject matter or theme, they are likely to be on the same topic.

## Instructions
1. Read the two provided ideas carefully.
2. Only return "yes" or "no" without any additional text or explanation.

## First Idea
{{first_idea}}

## Second Idea
{{second_idea}})";

inline constexpr std::string_view kJudgeObjective = R"(## Task
Identify whether the provided ideas share the same objective or not.

## Elements to Consider
If the ideas share the same goal or purpose, they are likely to have the same objective.

## Instructions
1. Read the two provided ideas carefully.
2. Only return "yes" or "no" without any additional text or explanation.

## First Idea
{{first_idea}}

## Second Idea
{{second_idea}})";

inline constexpr std::string_view kJudgeApproach = R"(## Task
Identify whether the provided ideas share the same approach or not.

## Elements to Consider
If the ideas share the same method or strategy, they are likely to have the same approach.

## Instructions
1. Read the two provided ideas carefully.
2. Only return "yes" or "no" without any additional text or explanation.

## First Idea
{{first_idea}}

## Second Idea
{{second_idea}})";

inline constexpr std::string_view kJudgeOverall = R"(## Task
Identify whether the provided ideas are identical or not.

## Elements to Consider
Identify if the ideas share:
- Biological target (e.g., protein, gene, pathway)
- Conceptual focus (e.g., mechanism, process)
- Experimental approach (e.g., technique, method)
- Unique elements (e.g., specific reagents, hardware)

## Instructions
1. Read the two provided ideas carefully.
2. Compare them based on the elements listed above.
3. Only return "yes" or "no" without any additional text or explanation.

## First Idea
{{first_idea}}

## Second Idea
{{second_idea}})";

}  // namespace spacer::prompts
