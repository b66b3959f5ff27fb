#include "xmaint/profile.hpp"

namespace xmaint {

namespace {

constexpr std::string_view kBuiltinProfiles = R"json(
{
  "profiles": [
    {
      "id": "c-family",
      "file_extensions": [".c", ".h", ".cc", ".cpp", ".cxx", ".hh", ".hpp", ".hxx", ".java", ".cs"],
      "line_comment_markers": ["//"],
      "block_comment_delimiters": [["/*", "*/"]],
      "string_delimiters": [["R\"(", ")\"", "", true], ["\"", "\"", "\\"], ["'", "'", "\\"]],
      "operators": ["...", ">>=", "<<=", "->*", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=",
                    "&&", "||", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "::",
                    "=", "+", "-", "*", "/", "%", "<", ">", "!", "~", "&", "|", "^", "?", ":", "."],
      "punctuation": ["(", ")", "[", "]", "{", "}", ",", ";", "#", "@"],
      "keywords": ["abstract", "auto", "bool", "boolean", "break", "case", "catch", "char", "class", "const",
                   "continue", "default", "delete", "do", "double", "else", "enum", "extends", "extern",
                   "false", "final", "finally", "float", "for", "foreach", "friend", "goto", "if",
                   "implements", "import", "inline", "instanceof", "int", "interface", "long", "namespace",
                   "new", "null", "nullptr", "operator", "override", "package", "private", "protected",
                   "public", "return", "short", "signed", "sizeof", "static", "struct", "super", "switch",
                   "synchronized", "template", "this", "throw", "throws", "true", "try", "typedef",
                   "typename", "union", "unsigned", "using", "virtual", "void", "volatile", "while"],
      "decision_tokens": ["if", "while", "for", "foreach", "case", "catch", "&&", "||", "?"],
      "operator_tokens": ["...", ">>=", "<<=", "->*", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=",
                          "&&", "||", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "::",
                          "=", "+", "-", "*", "/", "%", "<", ">", "!", "~", "&", "|", "^", "?", ":", ".",
                          "(", "[", "{", ",", ";",
                          "abstract", "auto", "bool", "boolean", "break", "case", "catch", "char", "class",
                          "const", "continue", "default", "delete", "do", "double", "else", "enum", "extends",
                          "extern", "final", "finally", "float", "for", "foreach", "friend", "goto", "if",
                          "implements", "import", "inline", "instanceof", "int", "interface", "long",
                          "namespace", "new", "operator", "override", "package", "private", "protected",
                          "public", "return", "short", "signed", "sizeof", "static", "struct", "super",
                          "switch", "synchronized", "template", "this", "throw", "throws", "try", "typedef",
                          "typename", "union", "unsigned", "using", "virtual", "void", "volatile", "while"],
      "unit_detection": "brace-block",
      "unit_keywords": [],
      "identifier_pattern": "[A-Za-z_$][A-Za-z0-9_$]*",
      "case_sensitive": true,
      "verbosity_factor": 1.0,
      "naming_pattern": "^[a-z][A-Za-z0-9]*$",
      "digit_separator": "'"
    },
    {
      "id": "python",
      "file_extensions": [".py", ".pyw"],
      "line_comment_markers": ["#"],
      "string_delimiters": [["\"\"\"", "\"\"\"", "\\", true], ["'''", "'''", "\\", true],
                            ["\"", "\"", "\\"], ["'", "'", "\\"]],
      "operators": ["**=", "//=", ">>=", "<<=", "->", ":=", "**", "//", "<<", ">>", "<=", ">=", "==", "!=",
                    "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "@=",
                    "=", "+", "-", "*", "/", "%", "<", ">", "&", "|", "^", "~", "@", "."],
      "punctuation": ["...", "(", ")", "[", "]", "{", "}", ",", ":", ";", "\\"],
      "keywords": ["False", "None", "True", "and", "as", "assert", "async", "await", "break", "class",
                   "continue", "def", "del", "elif", "else", "except", "finally", "for", "from", "global",
                   "if", "import", "in", "is", "lambda", "nonlocal", "not", "or", "pass", "raise", "return",
                   "try", "while", "with", "yield"],
      "decision_tokens": ["if", "elif", "for", "while", "except", "and", "or"],
      "operator_tokens": ["**=", "//=", ">>=", "<<=", "->", ":=", "**", "//", "<<", ">>", "<=", ">=", "==",
                          "!=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "@=",
                          "=", "+", "-", "*", "/", "%", "<", ">", "&", "|", "^", "~", "@", ".",
                          "(", "[", "{", ",", ":", ";",
                          "and", "as", "assert", "async", "await", "break", "class", "continue", "def", "del",
                          "elif", "else", "except", "finally", "for", "from", "global", "if", "import", "in",
                          "is", "lambda", "nonlocal", "not", "or", "pass", "raise", "return", "try", "while",
                          "with", "yield"],
      "unit_detection": "indent-block",
      "unit_keywords": ["def"],
      "identifier_pattern": "[A-Za-z_][A-Za-z0-9_]*",
      "case_sensitive": true,
      "verbosity_factor": 1.0,
      "naming_pattern": "^_{0,2}[a-z][a-z0-9_]*$"
    },
    {
      "id": "cobol-like",
      "file_extensions": [".cbl", ".cob", ".cpy", ".4gl"],
      "line_comment_markers": ["*>"],
      "string_delimiters": [["\"", "\"", ""], ["'", "'", ""]],
      "operators": [">=", "<=", "<>", "**", "=", "<", ">", "+", "-", "*", "/"],
      "punctuation": [".", ",", "(", ")", ":"],
      "keywords": ["ACCEPT", "ADD", "AND", "BY", "CALL", "CLOSE", "COMPUTE", "DELIMITED", "DISPLAY", "DIVIDE",
                   "ELSE", "END-EVALUATE", "END-IF", "END-PARAGRAPH", "END-PERFORM", "END-PROCEDURE",
                   "EVALUATE", "EXIT", "FROM", "GIVING", "GO", "IF", "INITIALIZE", "INTO", "MOVE",
                   "MULTIPLY", "NOT", "OPEN", "OR", "OTHER", "PARAGRAPH", "PERFORM", "PROCEDURE", "READ",
                   "RETURN", "RUN", "SET", "STOP", "STRING", "SUBTRACT", "THEN", "TIMES", "TO", "UNSTRING",
                   "UNTIL", "USING", "VARYING", "WHEN", "WRITE"],
      "decision_tokens": ["IF", "WHEN", "UNTIL", "AND", "OR"],
      "operator_tokens": [">=", "<=", "<>", "**", "=", "<", ">", "+", "-", "*", "/", "(", ",", ".",
                          "ACCEPT", "ADD", "AND", "BY", "CALL", "CLOSE", "COMPUTE", "DELIMITED", "DISPLAY",
                          "DIVIDE", "ELSE", "END-EVALUATE", "END-IF", "END-PARAGRAPH", "END-PERFORM",
                          "END-PROCEDURE", "EVALUATE", "EXIT", "FROM", "GIVING", "GO", "IF", "INITIALIZE",
                          "INTO", "MOVE", "MULTIPLY", "NOT", "OPEN", "OR", "OTHER", "PARAGRAPH", "PERFORM",
                          "PROCEDURE", "READ", "RETURN", "RUN", "SET", "STOP", "STRING", "SUBTRACT", "THEN",
                          "TIMES", "TO", "UNSTRING", "UNTIL", "USING", "VARYING", "WHEN", "WRITE"],
      "unit_detection": "keyword-pair",
      "unit_keywords": ["PROCEDURE", "PARAGRAPH"],
      "unit_end_keywords": ["END-PROCEDURE", "END-PARAGRAPH"],
      "nesting_pairs": [["IF", "END-IF"], ["EVALUATE", "END-EVALUATE"]],
      "identifier_pattern": "[A-Za-z_][A-Za-z0-9_-]*",
      "case_sensitive": false,
      "verbosity_factor": 2.0,
      "naming_pattern": "^[A-Z][A-Z0-9]*(-[A-Z0-9]+)*$"
    }
  ]
}
)json";

} // namespace

std::string_view builtin_profiles_json()
{
    return kBuiltinProfiles;
}

} // namespace xmaint
