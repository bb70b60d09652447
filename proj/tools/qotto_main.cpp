#include "qotto/runner.hpp"

int main(int argc, char** argv) { return qotto::run_cli(argc, argv); }
