#include "potlab_cli/app.hpp"

int main(int argc, char** argv) { return potlab::cli::run_cli(argc, argv); }
