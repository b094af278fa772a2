#include "spacer/cli.hpp"

int main(int argc, char** argv) { return spacer::cli::run(argc, argv); }
